"""Command-line entry point for kernel-based blind system identification."""

from backend.app.main import main

# python main.py benchmark --config experiment.toml
if __name__ == "__main__":
    raise SystemExit(main())

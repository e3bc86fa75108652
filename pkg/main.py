"""Entry point for the multisegment calculator."""

from src.mscalc.cli import main

if __name__ == "__main__":
    main()

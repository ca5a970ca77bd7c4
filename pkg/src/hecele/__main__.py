"""Allow `python -m hecele` to behave like the installed console script."""

from .cli import main

if __name__ == "__main__":
    main()

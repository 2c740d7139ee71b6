import sys

from frobpi.cli import main

if __name__ == "__main__":
    sys.exit(main())

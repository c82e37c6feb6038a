import sys

from src.main import run

if __name__ == "__main__":
    sys.exit(run())

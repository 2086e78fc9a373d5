import sys

from hubbard_vqe._cli import main

if __name__ == "__main__":
    sys.exit(main())

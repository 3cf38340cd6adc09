"""Entry point: python -m hydrogen_entanglement."""

import sys

from hydrogen_entanglement.cli import main

if __name__ == "__main__":
    sys.exit(main())

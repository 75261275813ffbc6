"""Allow ``python3 -m eikonal`` to reach the CLI."""
import sys

from .cli import main

sys.exit(main())

"""``python -m genop [verify] <suite> ...``, the same interface as the ``verify`` script."""
import sys

from .cli import main

argv = sys.argv[1:]
if argv[:1] == ["verify"]:
    argv = argv[1:]
sys.exit(main(argv))

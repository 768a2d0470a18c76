import sys

from qrs.cli import main

sys.exit(main())

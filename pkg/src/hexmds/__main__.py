import sys

from hexmds.cli import main

sys.exit(main())

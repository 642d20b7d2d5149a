import sys

from qnetlist.cli import main

sys.exit(main())

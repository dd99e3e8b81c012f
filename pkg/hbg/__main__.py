import sys

from hbg.cli import main

sys.exit(main())

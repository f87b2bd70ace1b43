import sys

from linetrans.cli import main

sys.exit(main())

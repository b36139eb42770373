import sys

from twp.cli import main

sys.exit(main())

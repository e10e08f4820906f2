import sys

from fermatcalc.cli import main

sys.exit(main())

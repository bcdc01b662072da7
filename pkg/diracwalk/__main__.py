import sys

from diracwalk.cli import main

sys.exit(main())

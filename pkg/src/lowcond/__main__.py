import sys

from lowcond.cli import main

sys.exit(main())

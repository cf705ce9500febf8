import sys

from experimentManager.cli import main

sys.exit(main())

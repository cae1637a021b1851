import sys

from ttfkit.cli import main

sys.exit(main())

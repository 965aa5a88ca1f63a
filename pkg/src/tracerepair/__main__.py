import sys

from tracerepair.cli import main

sys.exit(main())

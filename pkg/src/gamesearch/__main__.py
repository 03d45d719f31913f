import sys

from gamesearch.harness.cli import main

sys.exit(main())

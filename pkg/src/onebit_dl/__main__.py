import sys

from onebit_dl.harness.cli import main

sys.exit(main())

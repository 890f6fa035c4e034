import sys

from .cli_report.main import main

sys.exit(main())

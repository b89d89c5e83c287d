import sys

from cohomring.main import main

sys.exit(main())

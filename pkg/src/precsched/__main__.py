import sys

from precsched.cli import main

sys.exit(main())

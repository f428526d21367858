import sys

from graphmdl.main import main

sys.exit(main())

import sys

from rdc_app.app import main

sys.exit(main())

import sys

from radialchannels.cli import main

sys.exit(main())

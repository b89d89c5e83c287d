import logging
import sys
from typing import List, Optional

from cohomring.core.config import settings
from cohomring.cli.commands import main as cli_main

# Configure logging
logging.basicConfig(
    level=settings.log_level.upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point."""
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())

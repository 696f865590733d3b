import sys
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

# add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import EXIT_INPUT, peek_config_path, run_command
from src.config_loader import load_settings
from src.errors import InputError

logger = logging.getLogger(__name__)


def configure_logging(settings: Dict[str, Any]):
    """stderr plus a log file; stdout stays free for reports."""
    level = getattr(logging, str(settings['logging']['level']).upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(settings['logging']['file'])
        ],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """main execution function."""
    argv = sys.argv[1:] if argv is None else list(argv)

    try:
        settings = load_settings(peek_config_path(argv))
    except (InputError, OSError) as e:
        print(f"❌ Error loading configuration: {str(e)}", file=sys.stderr)
        return EXIT_INPUT

    configure_logging(settings)
    logger.debug(f"Running {argv}")
    return run_command(argv, settings)


if __name__ == "__main__":
    sys.exit(main())

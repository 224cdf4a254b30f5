#!/usr/bin/env python3
"""
Main entry point for the Legendrian Cost toolkit.

`python main.py serve` starts the HTTP service; any other arguments are
handed to the command-line interface (`python main.py invariants unknot`).
"""
import logging
import sys
from pathlib import Path

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cli import run
from src.config import config


def serve() -> int:
    """Run the FastAPI service with uvicorn."""
    logger = logging.getLogger(__name__)
    try:
        if not config.validate():
            logger.warning("Configuration validation failed. Budget defaults may be unusable.")

        logger.info("Starting Legendrian Cost service...")
        logger.info(f"Configuration: {config.HOST}:{config.PORT}")
        logger.info(f"Debug mode: {config.DEBUG}")

        import uvicorn
        uvicorn.run(
            "src.api:app",
            host=config.HOST,
            port=config.PORT,
            reload=config.DEBUG,
            log_level=config.LOG_LEVEL.lower()
        )
        return 0
    except KeyboardInterrupt:
        logger.info("Shutting down gracefully...")
        return 0
    except Exception as e:
        logger.error(f"Error starting application: {e}")
        return 1


def main() -> int:
    # Configure logging; stdout is reserved for command output
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )
    argv = sys.argv[1:]
    if argv[:1] == ["serve"]:
        return serve()
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

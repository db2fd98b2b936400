"""Entry point: load config, build models, serve."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import uvicorn

from .config import ModelLoadError, load_config
from .service import create_app


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="uttergen-sidecar",
        description="Serve model backends over the /v1/* wire protocol.",
    )
    parser.add_argument("--config", help="JSON config file (models, device, host, port)")
    parser.add_argument("--host", help="bind address override")
    parser.add_argument("--port", type=int, help="bind port override")
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
        app = create_app(config)
    except (ModelLoadError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    uvicorn.run(
        app,
        host=args.host or config.host,
        port=args.port if args.port is not None else config.port,
        log_level="info",
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

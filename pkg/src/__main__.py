"""Main entry point of the Python Wheel."""
import logging
import argparse
import json
import sys

from src import cli

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

arguments = ["--phi",
             "--domain",
             "--d",
             "--p",
             "--monomial",
             "--ell",
             "--suite",
             "--id",
             "--points",
             "--out",
             "--jobs",
             "--seed",
             "--config",
             ]

switches = ["--force",
            "--members",
            ]


def parse_args():
    """Parse command line."""
    parser = argparse.ArgumentParser(prog="wlp-gamma")
    parser.add_argument("command", choices=sorted(cli.MAPPING))
    for argument in arguments:
        parser.add_argument(argument)
    for switch in switches:
        parser.add_argument(switch, action="store_true", default=None)
    parser.add_argument("--log_level", default="info")
    args = parser.parse_args()
    logger.info(f"Input arguments dict: {args}")
    return args


def main():
    """Whl file entry point."""
    args = parse_args()
    flags = {key: value for key, value in vars(args).items() if key != "command" and value is not None}
    payload = {"command": args.command, "flags": flags}
    try:
        code = cli.main(json.dumps(payload))
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        code = 2
    sys.exit(code)


if __name__ == "__main__":
    main()

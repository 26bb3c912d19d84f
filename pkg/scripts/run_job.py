#!/usr/bin/env python3
"""
Run one job file - classify, entropy, gluing, dichotomy, shadow or periodic
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.utils import load_config, setup_logging
from src.jobs import run
import argparse
import logging

logger = logging.getLogger(__name__)


def parse_args(argv=None):
    p = argparse.ArgumentParser(description="Run a gluing-orbit toolkit job")
    p.add_argument("--job", required=True, help="Job file (JSON)")
    p.add_argument("--out", help="Output directory (default: jobs.output_dir/<job name>)")
    p.add_argument("--ci", action="store_true", help="Exit 2 when a theorem cross-check fails")
    p.add_argument("--threads", type=int, help="Worker threads (speed only)")
    p.add_argument("--config", default="config.yaml", help="Config file")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    config = load_config(args.config)
    setup_logging(config)

    jobs_config = config.get("jobs", {})
    threads = args.threads or jobs_config.get("threads", 1)
    out = args.out or str(Path(jobs_config.get("output_dir", "./out")) / Path(args.job).stem)

    logger.info("=" * 60)
    logger.info(f"Running {args.job}")
    logger.info("=" * 60)

    status = run(args.job, out, ci=args.ci, threads=threads, config=config)

    logger.info("=" * 60)
    logger.info(f"Finished with exit status {status}")
    logger.info("=" * 60)
    return status


if __name__ == "__main__":
    sys.exit(main())

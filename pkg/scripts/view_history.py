#!/usr/bin/env python3
"""
Run History Viewer

This script prints the summary of the harness run ledger.
"""

import sys
from pathlib import Path
from typing import Optional

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from scripts.history_logger import ExperimentHistoryLogger


def view_run_history(output_dir: Optional[str] = None) -> None:
    """Display the run history in a formatted way."""
    summary = ExperimentHistoryLogger(output_dir).get_history_summary()

    print("📊 Run History Summary")
    print("=" * 50)

    if "error" in summary:
        print(f"❌ Error: {summary['error']}")
        return

    if summary["total_executions"] == 0:
        print("📝 No harness executions recorded yet.")
        return

    print(f"Total Executions: {summary['total_executions']}")
    print(f"🧪 Runs: {summary['runs']}")
    print(f"🔍 Verifications: {summary['verifications']}")
    print(f"✅ Passed: {summary['passed_executions']}")
    print(f"❌ Failed: {summary['failed_executions']}")
    print(f"⚠️  Errors: {summary['errored_executions']}")
    print(f"🔢 Total Trials: {summary['total_trials']}")

    latest = summary["latest_execution"]
    print("\n🕒 Latest Execution:")
    print(f"  Timestamp: {latest['timestamp']}")
    print(f"  Command: {latest['command']}")
    print(f"  Duration: {latest['duration_seconds']}s")
    print(f"  Trials: {latest['trials']} ({latest['failed_trials']} failed)")
    print(f"  Status: {latest['status']}")
    if latest["error_message"]:
        print(f"  Error: {latest['error_message']}")

    print(f"\n📄 History file: {summary['history_file']}")


def main() -> None:
    """Main function for command line usage."""
    if len(sys.argv) > 1 and sys.argv[1] == "--help":
        print("Usage: python scripts/view_history.py [OUTPUT_DIR]")
        print("Display harness execution history and statistics.")
        return

    view_run_history(sys.argv[1] if len(sys.argv) > 1 else None)


if __name__ == "__main__":
    main()

# Command-line harness and sweep

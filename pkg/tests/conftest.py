import os
import tempfile
from pathlib import Path

# Set env vars at import time so they apply before the settings object is built.
_out_dir = Path(tempfile.mkdtemp(prefix="hybrid_qubit_test_"))

os.environ.setdefault("HYBRID_QUBIT_OUTPUT_DIR", _out_dir.as_posix())
os.environ.setdefault("HYBRID_QUBIT_WORKERS", "2")
os.environ.setdefault("HYBRID_QUBIT_LOG_LEVEL", "WARNING")

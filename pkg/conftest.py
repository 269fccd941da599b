# conftest.py
# Puts the flat top-level modules on the import path for the test suite.

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

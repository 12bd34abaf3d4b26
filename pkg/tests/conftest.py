"""Make the sibling fixture/oracle modules importable from any test."""
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

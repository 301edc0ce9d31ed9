"""
Sasaki toolkit configuration example.

Copy this file to config.py and adjust. Environment variables with the same
names take precedence; explicit command-line options override both.
"""

# λ values sampled for the one-parameter rows of the dimension-7 table
SASAKI_LAMBDA_SAMPLES = "0,1,-1,1/2,2"

# Bounds of the z-standard witness scan and the Reeb vector search
SASAKI_SCAN_HEIGHT = 3
SASAKI_SCAN_TERMS = 2

# Thread pool size for catalog verification
SASAKI_MAX_WORKERS = 4

# Report file served by the web viewer
SASAKI_REPORT_CACHE = "sasaki_report_cache.json"

SASAKI_LOG_LEVEL = "WARNING"

"""
Running the bundled suite from Python
=====================================

The same runner the command line uses, with a tally of verdicts by family.
"""

import collections
import json

from hilbert_forge import cli

cfg = cli.load_config(cli.default_config_path())
doc = cli.run_suite(cfg, jobs=1)

tally = collections.Counter((r["inequality_id"], r["verdict"]) for r in doc["reports"])
for (ident, verdict), count in sorted(tally.items()):
    print(f"{ident:<18} {verdict:<20} {count}")
print(json.dumps(doc["summary"]))
print("exit code:", cli.suite_exit_code(doc))

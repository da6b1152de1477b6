"""
PNML input and the command-line tool
====================================

Places are numbered by their order of declaration in the PNML file.  The
``pndead`` command writes ``<stem>.dp``, ``<stem>.dt`` and ``<stem>.cp``
from a single exploration.
"""

import tempfile
from pathlib import Path

from pndead.cli import run
from pndead.netio import parse_pnml

PNML = """<?xml version="1.0"?>
<pnml xmlns="http://www.pnml.org/version-2009/grammar/pnml">
  <net id="demo" type="http://www.pnml.org/version-2009/grammar/ptnet">
    <page id="main">
      <place id="ready"><initialMarking><text>1</text></initialMarking></place>
      <place id="left"/>
      <place id="right"/>
      <place id="done"/>
      <transition id="split"/>
      <transition id="join"/>
      <arc id="a1" source="ready" target="split"/>
      <arc id="a2" source="split" target="left"/>
      <arc id="a3" source="split" target="right"/>
      <arc id="a4" source="left" target="join"/>
      <arc id="a5" source="right" target="join"/>
      <arc id="a6" source="join" target="done"/>
    </page>
  </net>
</pnml>
"""

net = parse_pnml(PNML)
for number, pid in enumerate(net.place_ids, 1):
    print(number, pid)

###############################################################################
# Equivalent shell call:
#   pndead --dead-places --dead-transitions --concurrent-places demo.pnml -o out/

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "demo.pnml"
    path.write_text(PNML)
    code = run(["--dead-places", "--dead-transitions", "--concurrent-places", str(path), "-o", tmp])
    print("exit status", code)
    for ext in (".dp", ".dt", ".cp"):
        print(f"--- demo{ext}")
        print((Path(tmp) / f"demo{ext}").read_text(), end="")

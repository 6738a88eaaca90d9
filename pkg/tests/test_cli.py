# Copyright (c) 2024 Facenapalm
# 
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# 
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# 
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

import csv
import json
import os
from fractions import Fraction

import pytest

from audit import AuditCommand
from common.bounds import random_lemma_constants
from common.experiments import EXPERIMENTS, expand_grid, header, run_row
from common.graphcore import load_instance, save_instance
from count import CountCommand
from find import FindCommand
from gen import GenerateCommand
from oracle import OracleCommand
from strategies import make_blockade
from sweep import SweepCommand

def store(tmp_path, blockade, name="instance.blk"):
    path = str(tmp_path / name)
    save_instance(path, blockade)
    return path

def output_json(capsys):
    return json.loads(capsys.readouterr().out)

def test_gen_writes_instance_and_audit(tmp_path, capsys):
    path = str(tmp_path / "free.blk")
    assert GenerateCommand().run(["star-free", "-seed", "1", "-k", "2", "-W", "3", "-o", path]) == 0
    assert "star-free blockade written" in capsys.readouterr().out
    assert load_instance(path).length == 2
    with open(str(tmp_path / "free.audit.json"), encoding="utf-8") as sidecar:
        document = json.load(sidecar)
    assert document["spec"]["construction"] == "star-free"
    assert document["audit"]["premises"]["no_rainbow_star"]["status"] == "structural"

def test_gen_from_spec_file(tmp_path, capsys):
    spec = tmp_path / "run.spec"
    spec.write_text("construction=star-free\nseed=4\nk=2\nW=2\n", encoding="utf-8")
    path = str(tmp_path / "spec.blk")
    assert GenerateCommand().run(["-spec", str(spec), "-o", path]) == 0
    assert os.path.exists(path)

def test_gen_errors(tmp_path, capsys):
    assert GenerateCommand().run(["star-free", "-k", "2", "-W", "3"]) == 1
    assert "missing -seed" in capsys.readouterr().err
    assert GenerateCommand().run(["star-free", "-seed", "1", "-unknown"]) == 1
    assert GenerateCommand().run(["star-free", "-seed", "1", "-eps", "0.5", "-k", "2", "-W", "3"]) == 1

def test_find_exit_codes(tmp_path, capsys, ring, empty_blockade):
    assert FindCommand().run(["path", store(tmp_path, ring)]) == 0
    document = output_json(capsys)
    assert document["succeeded"] is True
    assert document["witness"]["assignment"] == [0, 1, 2]
    assert FindCommand().run(["path", store(tmp_path, empty_blockade(3, 2), "empty.blk")]) == 2
    assert output_json(capsys)["failure_stage"] == "cover-1"
    assert FindCommand().run(["star", store(tmp_path, ring)]) == 1
    assert FindCommand().run(["c4", store(tmp_path, ring)]) == 1
    assert FindCommand().run(["path", str(tmp_path / "missing.blk")]) == 1

def test_find_tree(tmp_path, capsys):
    path = store(tmp_path, make_blockade([[0], [1], [2]], [(0, 1), (1, 2)]))
    assert FindCommand().run(["tree", path]) == 0
    assert output_json(capsys)["witness"]["kind"] == "ordered-transversal"
    assert FindCommand().run(["caterpillar", path, "-pattern", "path:3"]) == 0

def test_oracle_exit_codes(tmp_path, capsys, five_cycle):
    path = store(tmp_path, five_cycle)
    assert OracleCommand().run([path, "-pattern", "cycle:5"]) == 0
    document = output_json(capsys)
    assert document["status"] == "found"
    assert document["pattern"] == "cycle:5"
    assert OracleCommand().run([path, "-pattern", "cycle:5", "-max-tuples", "0"]) == 3
    assert output_json(capsys)["status"] == "indeterminate"
    assert OracleCommand().run([path]) == 1
    assert OracleCommand().run([path, "-pattern", "blob:3"]) == 1

def test_count_modes(tmp_path, capsys, ring):
    path = store(tmp_path, ring)
    assert CountCommand().run(["transversal", path, "-pattern", "path:3", "-naive"]) == 0
    document = output_json(capsys)
    assert document["count"] == 12
    assert document["agree"] is True
    assert CountCommand().run(["transversal", path, "-pattern", "path:3", "-max-tuples", "0"]) == 3

def test_count_ordered_tree(tmp_path, capsys):
    path = store(tmp_path, make_blockade([[0], [1], [2]], [(0, 1), (1, 2)]))
    assert CountCommand().run(["ordered-tree", path]) == 0
    document = output_json(capsys)
    assert document["count"] == 1
    assert document["floor"] == 1
    assert document["bound_holds"] is True
    assert CountCommand().run(["ordered-tree", path, "-pattern", "cycle:3"]) == 1

def test_audit_checks(tmp_path, capsys):
    assert AuditCommand().run(["card", "-theorem", "path", "-k", "4"]) == 0
    assert output_json(capsys)["constants"]["max_eps"] == "1/6"
    assert AuditCommand().run(["binom", "-n", "12"]) == 0
    assert output_json(capsys)["holds"] is True
    path = store(tmp_path, make_blockade([[0, 1], [2, 3]], [(0, 2), (1, 3)]))
    assert AuditCommand().run(["coherence", path]) == 1
    assert AuditCommand().run(["cohesion", path, "-x", "1", "-y", "1"]) == 0
    assert output_json(capsys)["satisfied"] is False
    assert AuditCommand().run(["local-degree", path, "-eps", "1/2"]) == 0
    assert output_json(capsys)["local_degree"] == 1
    assert AuditCommand().run(["covering", path]) == 0
    assert output_json(capsys)["problems"] == []

def test_grid_expansion():
    experiment = EXPERIMENTS["path"]
    grid = expand_grid(experiment, {"k": [2, 3]}, [0, 1])
    assert [(point["k"], seed) for point, seed in grid] == [(2, 0), (2, 1), (3, 0), (3, 1)]
    assert header(experiment, True)[-1] == "seconds"
    with pytest.raises(ValueError):
        expand_grid(experiment, {"k": []}, [0])

def test_failed_row_keeps_the_error():
    point = {"t": 2, "c": Fraction(1, 2), "n": 8, "eps": Fraction(1, 2)}
    row = run_row(("ordered-star", point, 0, False))
    assert row[:6] == ["ordered-star", "2", "1/2", "8", "1/2", "0"]
    assert row[-1].startswith("ValueError")

def test_sweep_writes_table(tmp_path, capsys):
    path = str(tmp_path / "table.csv")
    assert SweepCommand().run(["ordered-star", "-seeds", "0..1", "-o", path]) == 0
    with open(path, encoding="utf-8") as table:
        lines = table.read().splitlines()
    assert lines[:3] == ["# schema: v1", "# experiment: ordered-star", "# rows: 2"]
    rows = list(csv.reader(lines[3:]))
    assert rows[0] == header(EXPERIMENTS["ordered-star"])
    assert [row[6] for row in rows[1:]] == ["none", "none"]
    assert "2 of 2 rows processed" in capsys.readouterr().err
    assert SweepCommand().run(["ordered-star", "-seeds", ""]) == 1

def test_gen_output_is_reproducible(tmp_path, capsys):
    contents = []
    for name in ("first", "second"):
        path = str(tmp_path / f"{name}.blk")
        assert GenerateCommand().run(["ordered-star", "-seed", "3", "-t", "3", "-c", "1/2", "-n", "8", "-relaxed",
                                      "-o", path]) == 0
        with open(path, "rb") as instance, open(str(tmp_path / f"{name}.audit.json"), "rb") as sidecar:
            contents.append((instance.read(), sidecar.read()))
    assert contents[0] == contents[1]

@pytest.mark.parametrize("finder", ["path", "c4", "tree"])
def test_find_output_is_reproducible(tmp_path, capsys, finder):
    path = str(tmp_path / "sparse.blk")
    k = 4 if finder == "c4" else 3
    assert GenerateCommand().run(["sparse-blockade", "-seed", "5", "-k", str(k), "-W", "12", "-eps", "1",
                                  "-o", path]) == 0
    capsys.readouterr()
    first = FindCommand().run([finder, path])
    first_output = capsys.readouterr().out
    second = FindCommand().run([finder, path])
    assert first == second
    assert capsys.readouterr().out == first_output

def test_sweep_table_does_not_depend_on_jobs(tmp_path):
    tables = []
    for jobs in ("1", "2", "1"):
        path = str(tmp_path / f"triangle-{len(tables)}.csv")
        assert SweepCommand().run(["triangle", "-seeds", "0..2", "-jobs", jobs, "-o", path]) == 0
        with open(path, "rb") as table:
            tables.append(table.read())
    assert tables[0] == tables[1] == tables[2]

def test_triangle_row_reports_nonempty_pairs():
    experiment = EXPERIMENTS["triangle"]
    point = dict(experiment.defaults)
    c, _ = random_lemma_constants(point["eps"])
    assert c < point["W"]
    row = run_row(("triangle", point, 0, False))
    assert row[-1] == ""
    assert row[4] in ("found", "none")
    larger, smaller = row[5], row[6]
    assert (larger == "") == (smaller == "")
    if smaller:
        assert int(larger) >= int(smaller) >= 1

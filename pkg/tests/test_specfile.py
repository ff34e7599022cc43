import pytest

from gradedphi.cli.specfile import load_spec, parse_spec
from gradedphi.errors import SpecParseError

FULL = """\
# every declaration kind
group C2 = cyclic 2
group T = trivial
ring A = gaussian 2 over C2
grading A = gaussian
ring Z8 = zn 8
ring P = poly 2 2 0
ring Z4g = zn 4 over C2
grading Z4g = components 0=0,1,2,3
ring AA = product A A
module M = self A
module F = free Z8 2
module Sh = shift A 1
module Pr = product M Sh
module Z = zero Z8
submodule K = Z8 generators 4
module Q = quotient Z8 K
hom p: Z8 -> Q 1=[1]
mulset S: Z8 3
phi sq = n:2
phi w = omega
"""


def test_full_grammar():
    spec = parse_spec(FULL)
    assert list(spec.groups) == ["C2", "T"]
    assert set(spec.rings) == {"A", "Z8", "P", "Z4g", "AA"}
    assert spec.modules["M"] is spec.rings["A"].self_module
    assert spec.modules["F"].order == 64
    assert spec.modules["Q"].order == 4
    assert spec.homs["p"].kernel.labels == ["0", "4"]
    assert spec.mulsets["S"].labels == ["1", "3"]
    assert spec.phis == {"sq": "n:2", "w": "omega"}
    assert spec.rings["AA"].order == 16
    assert not spec.failures


def test_comments_and_blank_lines():
    spec = parse_spec("\n# nothing\nring A = zn 3   # trailing\n\n")
    assert spec.rings["A"].order == 3


@pytest.mark.parametrize("text, line, fragment", [
    ("ring R = quaternion 3", 1, "unknown ring family"),
    ("ring A = zn 4\nring A = zn 5", 2, "already declared"),
    ("module M = self B\nring B = zn 4", 1, "undeclared name 'B'"),
    ("module M = self M", 1, "undeclared"),
    ("ring A = zn 4\nsubmodule K = A generators 9", 2, "not an element"),
    ("group G = cyclic x", 1, "integer"),
    ("frobnicate x", 1, "unknown declaration"),
    ("ring A = zn", 1, "takes 1 argument"),
    ("phi p = n:0", 1, "n >= 1"),
    ("ring A = zn 4\ngrading A = gaussian", 1, "does not apply"),
    ("ring A = zn 4\nmodule M = self A\ngrading A = trivial", 3, "must precede"),
    ("ring A = zn 1", 1, ">= 2"),
    ("ring A = zn 4\nmodule M = weird A", 2, "unknown module form"),
    ("ring A = zn 4\nhom f A -> A", 2, "expected 'hom"),
    ("ring A = zn 4 \"", 1, "quotation"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_validation_failures_are_recorded(data_dir):
    spec = load_spec(data_dir / "overlap.spec")
    (report,) = spec.failures.values()
    assert report.axiom == "direct-sum"


def test_fixtures_load(data_dir):
    assert load_spec(data_dir / "gaussian.spec").submodules["Zero"].labels == ["0"]
    assert load_spec(data_dir / "z16.spec").submodules["K8"].labels == ["0", "8"]
    assert load_spec(data_dir / "empty.spec").rings == {}


def test_missing_file(tmp_path):
    with pytest.raises(SpecParseError):
        load_spec(tmp_path / "nope.spec")

"""Tests for MPS and LP model export."""

import pytest

from ccuc.errors import DataError
from ccuc.milp.formulation import build_duc
from ccuc.milp.model import Family, MilpModel, Sense, VarKind
from ccuc.milp.writers import export_model, lp_name, lp_text, mps_text


@pytest.fixture
def toy_model():
    """min 2 b + c  s.t.  b + c >= 1.5,  c <= 3,  b binary, c free."""
    m = MilpModel("toy")
    b = m.add_variable("b[t=0,i=0]", VarKind.BINARY)
    c = m.add_variable("c[t=0,i=0]", lower=float("-inf"))
    m.add_row("cover[t=0]", {b: 1.0, c: 1.0}, Sense.GE, 1.5, Family.HYBRID)
    m.add_row("cap[t=0]", {c: 1.0}, Sense.LE, 3.0, Family.CONTINUOUS)
    m.set_objective({b: 2.0, c: 1.0})
    return m


class TestMps:
    """Test the MPS writer."""

    def test_sections_in_order(self, toy_model):
        lines = mps_text(toy_model).splitlines()
        headers = [line for line in lines if line and not line.startswith(" ")]
        assert headers == ["NAME          toy", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"]

    def test_rows(self, toy_model):
        text = mps_text(toy_model)
        assert " N  COST\n G  cover[t=0]\n L  cap[t=0]\n" in text

    def test_integer_markers_wrap_binaries(self, toy_model):
        lines = mps_text(toy_model).splitlines()
        start = lines.index("    MARKER0 'MARKER' 'INTORG'")
        end = lines.index("    MARKER1 'MARKER' 'INTEND'")
        between = lines[start + 1 : end]
        assert between == [
            "    b[t=0,i=0] COST 2",
            "    b[t=0,i=0] cover[t=0] 1",
        ]

    def test_rhs_and_bounds(self, toy_model):
        text = mps_text(toy_model)
        assert "    RHS cover[t=0] 1.5\n" in text
        assert "    RHS cap[t=0] 3\n" in text
        assert " BV BND b[t=0,i=0]\n" in text
        assert " FR BND c[t=0,i=0]\n" in text

    def test_fixed_variables(self, toy_model):
        fixed = toy_model.with_fixed({0: 1.0})
        assert " FX BND b[t=0,i=0] 1\n" in mps_text(fixed)

    def test_fixed_layout_keeps_long_names(self, toy_model):
        lines = mps_text(toy_model, fixed=True).splitlines()
        width = len("cover[t=0]")
        line = next(l for l in lines if l.strip().startswith("RHS") and "cover" in l)
        assert line == f"    {'RHS':<{width}}  {'cover[t=0]':<{width}}  1.5"

    def test_uc_model_names_unchanged(self, tiny_instance):
        text = mps_text(build_duc(tiny_instance))
        assert "g[t=0,k=0,i=0]" in text
        assert " G  balance[t=0,k=0]" in text

    def test_unreferenced_column_declared(self):
        m = MilpModel("empty")
        m.add_variable("x[t=0]")
        assert "    x[t=0] COST 0\n" in mps_text(m)


class TestLp:
    """Test the CPLEX LP writer."""

    def test_name_mapping(self):
        assert lp_name("g[t=3,k=0,i=17]") == "g(t_3,k_0,i_17)"

    def test_layout(self, toy_model):
        text = lp_text(toy_model)
        assert text.startswith("\\ Problem: toy\nMinimize\n obj: + 2 b(t_0,i_0) + 1 c(t_0,i_0)\n")
        assert " cover(t_0): + 1 b(t_0,i_0) + 1 c(t_0,i_0) >= 1.5\n" in text
        assert " cap(t_0): + 1 c(t_0,i_0) <= 3\n" in text
        assert "Bounds\n c(t_0,i_0) free\n" in text
        assert "Binaries\n b(t_0,i_0)\n" in text
        assert text.endswith("End\n")

    def test_no_raw_brackets(self, small_instance):
        text = lp_text(build_duc(small_instance))
        assert "[" not in text
        assert "=" not in text.replace(">=", "").replace("<=", "")

    def test_long_rows_wrap(self, small_instance):
        text = lp_text(build_duc(small_instance))
        assert max(len(line) for line in text.splitlines()) < 400


class TestExportModel:
    """Test format dispatch."""

    def test_infer_from_extension(self, toy_model, tmp_path):
        mps = tmp_path / "m.mps"
        lp = tmp_path / "m.lp"
        assert export_model(toy_model, str(mps))
        assert export_model(toy_model, str(lp))
        assert mps.read_text().startswith("NAME")
        assert lp.read_text().startswith("\\ Problem")

    def test_explicit_fixed_format(self, toy_model, tmp_path):
        path = tmp_path / "m.txt"
        assert export_model(toy_model, str(path), "fixed-mps")
        assert path.read_text() == mps_text(toy_model, fixed=True)

    def test_unknown_extension(self, toy_model, tmp_path):
        with pytest.raises(DataError, match="infer"):
            export_model(toy_model, str(tmp_path / "m.txt"))

    def test_unknown_format(self, toy_model, tmp_path):
        with pytest.raises(DataError, match="unknown"):
            export_model(toy_model, str(tmp_path / "m.mps"), "xml")

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st

from conftest import build
from geoscript.graph import ConstructionGraph, GraphError
from geoscript.parser import ScriptError, parse_script
from geoscript.values import Point2, Point3, Slider

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


def lit(v: float) -> str:
    """Decimal literal (the language has no exponent notation)."""
    return format(v, ".20f")


def ev(expr: str, prelude: str = ""):
    return build(f"{prelude}\nvalue={expr}\n").value("value")


# -- evaluation ------------------------------------------------------------------


def test_named_point():
    g = build("B=(3,4)")
    assert g.value("B") == Point2(3.0, 4.0)
    assert g.node("B").view == "2d"


def test_user_function_application():
    assert ev("h(1, 1)", "h(x,y)=x+y") == 2.0


def test_complex_reciprocal():
    w = ev("1/z_3", "z_3=(1,1)")
    assert (w.x, w.y) == (0.5, -0.5)


def test_real_sqrt_of_negative_is_undefined():
    assert math.isnan(ev("sqrt(-1)"))


def test_division_by_complex_zero_is_undefined():
    assert not ev("1/(0, 0)").is_finite()


def test_accessor_on_non_point_is_undefined():
    assert math.isnan(ev("x(a)", "a=2"))


def test_imaginary_unit():
    assert ev("i") == Point2(0.0, 1.0)
    assert ev("2 + 3i") == Point2(2.0, 3.0)


def test_complex_product_and_componentwise_sum():
    assert ev("(1,2)*(3,4)") == Point2(-5.0, 10.0)
    assert ev("(1,2)+(3,4)") == Point2(4.0, 6.0)
    assert ev("2(1,2)") == Point2(2.0, 4.0)


def test_point3_arithmetic_is_spatial():
    g = build("Q=(1,2,3)\nS=Q+Q\nT=2Q")
    assert g.value("S") == Point3(2.0, 4.0, 6.0)
    assert g.value("T") == Point3(2.0, 4.0, 6.0)
    assert g.node("S").view == "3d"


def test_coordinate_accessors():
    assert ev("x(P) + y(P)", "P=(3,4)") == 7.0
    assert ev("z(Q)", "Q=(1,2,3)") == 3.0


def test_type_mismatch_names_operator_and_kinds():
    with pytest.raises(ScriptError, match=r"'\+' to Polygon and Number"):
        build("P=Polígono((0,0),(1,0),(0,1))\nq=P+1")


def test_undefined_propagates_without_crash():
    g = build("a=sqrt(-1)\nb=a+1\nP=(a, 2)\nQ=P+(1,1)")
    assert math.isnan(g.value("b"))
    assert not g.value("Q").is_finite()


@hsettings(max_examples=200, deadline=None)
@given(finite, finite)
def test_reciprocal_law(x, y):
    assume(math.hypot(x, y) > 1e-6)
    g = build(f"z=({lit(x)}, {lit(y)})\nw=z*(1/z)")
    w = g.value("w")
    assert abs(w.x - 1) <= 1e-12 and abs(w.y) <= 1e-12


@hsettings(max_examples=200, deadline=None)
@given(finite, finite, finite, finite)
def test_division_undoes_product(a, b, x, y):
    assume(math.hypot(x, y) > 1e-3)
    g = build(f"w=({lit(a)}, {lit(b)})\nz=({lit(x)}, {lit(y)})\nq=(w*z)/z")
    q, w = g.value("q"), g.value("w")
    assert abs(q.x - w.x) <= 1e-9 and abs(q.y - w.y) <= 1e-9


# -- definitions -----------------------------------------------------------------


def test_self_reference_is_a_cycle():
    with pytest.raises(ScriptError, match="cycle"):
        build("a = a + 1")


def test_redefinition_cycle_rejected():
    with pytest.raises(ScriptError, match="cycle"):
        build("a=1\nb=a+1\na=b")


def test_unknown_identifier():
    with pytest.raises(ScriptError, match="unknown"):
        build("a=q+1")


def test_unknown_command():
    with pytest.raises(ScriptError, match="unknown command 'Foo'"):
        build("q=Foo(1)")


def test_bare_statements_take_free_uppercase_names():
    g = build("A=1\n(3,4)\n(1,1)")
    assert g.names() == ["A", "B", "C"]
    assert g.value("B") == Point2(3.0, 4.0)


def test_auto_names_continue_after_z():
    src = "".join(f"({k}, 0)\n" for k in range(28))
    g = build(src)
    assert g.names()[25:] == ["Z", "AA", "BB"]


def test_redefinition_updates_dependents():
    g = build("a=1\nb=a+1\na=5")
    assert g.value("b") == 6.0


def test_view_directive_and_3d_default():
    g = build("P=(1,2)\n#view 2d2\nQ=(0,0)\nR=(1,1,1)\n#view 2d\nS=(1,2,3)")
    assert [g.node(n).view for n in "PQRS"] == ["2d", "2d2", "3d", "3d"]


# -- sliders and recomputation -----------------------------------------------------


def test_slider_snaps_and_clamps():
    g = build("t=Seletor(0, 1, .1)")
    g.set_slider("t", 7)
    assert g.value("t").v == 1.0
    g.set_slider("t", 0.33)
    assert g.value("t").v == pytest.approx(0.3, abs=1e-15)


def test_set_slider_errors():
    g = build("e=5\nt=Seletor(0, 1, .1)")
    with pytest.raises(GraphError, match="not a slider"):
        g.set_slider("e", 1)
    with pytest.raises(GraphError, match="unknown"):
        g.set_slider("zz", 1)


def test_diamond_recomputes_each_node_once():
    g = build("a=Seletor(0, 10, 1)\nb=a+1\nc=2a\nd=b+c\ne=5")
    g.eval_counts.clear()
    ids = g.set_slider("a", 3)
    assert {g.nodes[i].name for i in ids} == {"b", "c", "d"}
    assert dict(g.eval_counts) == {"b": 1, "c": 1, "d": 1}
    assert g.value("d") == 10.0


def test_recomputed_set_equals_reachable_set():
    g = build("a=Seletor(0, 10, 1)\nb=a+1\nc=b+1\nk=Seletor(0, 1, 1)\nm=k+c")
    a_id = g.node("a").id
    assert g.set_slider("a", 2) == g.descendants([a_id])


def test_empty_dirty_set_does_no_work():
    g = build("a=1\nb=a+1")
    g.eval_counts.clear()
    assert g.topo_recompute([]) == []
    assert not g.eval_counts


def test_full_topological_order_respects_dependencies():
    g = build("a=Seletor(0, 10, 1)\nc=3\nb=a+c\nd=b*b\ne=d+a")
    order = g.topo_order(g.nodes.keys())
    pos = {nid: k for k, nid in enumerate(order)}
    for node in g.nodes.values():
        for dep in node.deps:
            assert pos[dep] < pos[node.id]


def _reaches(g: ConstructionGraph, src: int, dst: int) -> bool:
    stack, seen = [src], set()
    while stack:
        n = stack.pop()
        if n == dst:
            return True
        if n not in seen:
            seen.add(n)
            stack.extend(g.nodes[n].dependents)
    return False


@hsettings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=12))
def test_graph_stays_acyclic(edits):
    g = build("s=Seletor(0, 10, 1)\n" + "".join(f"n{k}=s+{k}\n" for k in range(6)))
    for target, source in edits:
        try:
            g.define(parse_script(f"n{target}=n{source}+1").statements[0])
        except GraphError:
            pass
        g.set_slider("s", target)
    for node in g.nodes.values():
        assert not any(_reaches(g, d, node.id) for d in node.dependents if d != node.id)
        assert node.id not in node.dependents


def test_determinism_bit_for_bit():
    src = "a=Seletor(0, 5, 0.5)\nz=(a, 1)\nw=z+1/z\nf(x)=sin(a x)\nv=f(1.3)"
    g1, g2 = build(src), build(src)
    for g in (g1, g2):
        g.set_slider("a", 2.5)
    assert g1.value("w") == g2.value("w")
    assert g1.value("v") == g2.value("v")


def test_slider_initial_value_is_min():
    assert build("m=Seletor(-5, 5, 1)").value("m") == Slider(-5.0, -5.0, 5.0, 1.0)


def test_dynamic_color_is_clamped_after_recompute():
    g = build("a=Seletor(-5, 5, 1)\nf(x)=x\nDefinirCorDinâmica(f, a, 2a, 0.5)")
    assert g.node("f").style.rgb == (0.0, 0.0, 0.5)
    g.set_slider("a", 1)
    assert g.node("f").style.rgb == (1.0, 1.0, 0.5)


def test_locus_cache_invalidated_by_slider():
    g = build("r=Seletor(1, 3, 1)\nc=Circunferência((0,0), (r, 0))\nP=Ponto(c)\nL=Lugar_Geométrico(P, P)")
    before = np.vstack([p.vertices for p in g.value("L").polylines])
    g.set_slider("r", 2)
    after = np.vstack([p.vertices for p in g.value("L").polylines])
    assert np.allclose(np.linalg.norm(before, axis=1), 1.0)
    assert np.allclose(np.linalg.norm(after, axis=1), 2.0)

from radials.dot import to_dot
from radials.fixtures import F2, F3
from radials.graph import BidirectedGraph, Edge, MINUS, PLUS


def test_signs_map_to_arrow_styles():
    text = to_dot(F3(), root="r", name="f3")
    assert text.startswith('graph "f3" {\n  node [shape=circle];\n')
    assert '"a" -- "r" [dir=both, arrowtail=normal, arrowhead=otee, label="e1"];' in text
    assert '"r" [shape=doublecircle];' in text
    assert text.endswith("}\n")


def test_highlight_and_no_root():
    text = to_dot(F2(), highlight=frozenset({"a"}))
    assert "doublecircle" not in text
    assert '"a" [style=filled, fillcolor="#dddddd"];' in text


def test_loops_and_quoting():
    g = BidirectedGraph(['x"y'], [Edge("l", 'x"y', MINUS, 'x"y', PLUS)])
    text = to_dot(g, root='x"y')
    assert '"x\\"y" -- "x\\"y" [dir=both, arrowtail=otee, arrowhead=normal, label="l"];' in text


def test_output_is_stable():
    assert to_dot(F3(), "r") == to_dot(F3(), "r")

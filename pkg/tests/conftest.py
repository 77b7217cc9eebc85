import sys
from pathlib import Path

from hypothesis import strategies as st

from teamalloc.model import Instance, canonical_ranks

sys.path.insert(0, str(Path(__file__).parent))


@st.composite
def instances(draw, n=(1, 4), m=(0, 6), values=(-5, 5), strict=False, identical=False):
    num_teams = draw(st.integers(*n))
    num_players = draw(st.integers(*m))
    cell = st.integers(*values)
    if identical:
        row = draw(st.lists(cell, min_size=num_players, max_size=num_players))
        vals = [list(row) for _ in range(num_teams)]
    else:
        vals = [draw(st.lists(cell, min_size=num_players, max_size=num_players)) for _ in range(num_teams)]
    ranks = []
    for _ in range(num_players):
        if strict:
            order = draw(st.permutations(range(num_teams)))
            ranks.append(canonical_ranks(list(order)))
        else:
            levels = draw(st.lists(st.integers(0, num_teams - 1), min_size=num_teams, max_size=num_teams))
            ranks.append(canonical_ranks(levels))
    return Instance(num_teams, vals, ranks)


@st.composite
def instance_and_assignment(draw, **kwargs):
    inst = draw(instances(**kwargs))
    assignment = draw(st.lists(st.integers(0, inst.num_teams - 1),
                               min_size=inst.num_players, max_size=inst.num_players))
    return inst, tuple(assignment)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")

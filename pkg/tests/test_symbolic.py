from htgroth.symbolic import SymExpr, atom, integer


def test_ring_basics():
    a, b = atom("a"), atom("b")
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    assert a - a == integer(0)
    assert integer(0).is_zero()


def test_integer_embedding():
    assert integer(3) + integer(4) == integer(7)
    assert (integer(2) * atom("x")) - atom("x") == atom("x")
    assert integer(5).as_integer() == 5
    assert not atom("x").is_integer()


def test_monomials_collect():
    x = atom("x")
    assert x * x == SymExpr.atom("x", 2)
    assert (x + x) == integer(2) * x


def test_mixed_scalars():
    x = atom("x")
    assert 2 * x == x + x
    assert x + 0 == x
    assert 1 * x == x


def test_atoms_listing():
    e = atom("m") * atom("d") + integer(2)
    assert e.atoms() == {"m", "d"}


def test_hash_consistency():
    assert hash(atom("u") + atom("v")) == hash(atom("v") + atom("u"))

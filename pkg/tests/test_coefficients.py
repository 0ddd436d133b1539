import gmpy2
import pytest
from gmpy2 import mpfr

from sympint._catalog_data import TABLE_ENTRIES
from sympint.coefficients import (CoefficientFileError, ContractViolation,
                                  Provenance, SchemeTag, SplittingCoefficients,
                                  catalog, complete_symmetric, leapfrog,
                                  load_coefficient_file, resolve_method,
                                  ruth_coefficients, save_coefficient_file,
                                  validate)
from sympint.precision import big, parse_decimal


def fixed76(x: mpfr) -> str:
    """Format |x| < 1 with exactly 76 fraction digits, sign included."""
    mant, exp, _ = gmpy2.digits(x, 10, 2)
    sign = ""
    if mant.startswith("-"):
        sign = "-"
    mant, exp2, _ = gmpy2.digits(x, 10, 76 + exp)
    if exp2 != exp:  # rounding rolled over a power of ten
        mant, exp2, _ = gmpy2.digits(x, 10, 76 + exp2)
    return f"{sign}0." + "0" * (-exp2) + mant.lstrip("-")


def test_completion_five_stage_pattern(entries):
    from sympint.precision import working_precision

    cs = entries["ABAs5o6H A"]
    spec = TABLE_ENTRIES["ABAs5o6H A"]
    d1, d2 = (parse_decimal(s) for s in spec["outer"])
    c1, c2 = (parse_decimal(s) for s in spec["inner"])
    with working_precision(256):
        d3 = big("0.5") - d1 - d2
        c3 = 1 - 2 * (c1 + c2)
    assert cs.outer == (d1, d2, d3, d3, d2, d1)
    assert cs.inner == (c1, c2, c3, c2, c1)
    # drift-first scheme stores the outer family as drifts, zero-padded kicks
    assert cs.c == cs.outer
    assert cs.d[-1] == 0


def test_completion_leapfrog_structure():
    lf = leapfrog(SchemeTag.BAB)
    assert [float(x) for x in lf.d] == [0.5, 0.5]
    assert [float(x) for x in lf.c] == [1.0, 0.0]


def test_completion_nine_stage_footer(entries):
    from sympint.precision import working_precision

    cs = entries["BAB's9o7H"]
    spec = TABLE_ENTRIES["BAB's9o7H"]
    dfree = [parse_decimal(s) for s in spec["outer"]]
    cfree = [parse_decimal(s) for s in spec["inner"]]
    with working_precision(256):
        d5 = big("0.5") - sum(dfree, big(0))
        c5 = 1 - 2 * sum(cfree, big(0))
    assert cs.d == tuple(dfree + [d5, d5] + dfree[::-1])
    assert cs.c == tuple(cfree + [c5] + cfree[::-1] + [big(0)])


def test_completion_rejects_wrong_counts():
    with pytest.raises(ContractViolation):
        complete_symmetric([1, 2, 3], [1], SchemeTag.ABA, 5)


def test_validate_ruth_residuals_tiny():
    report = validate(ruth_coefficients(), tol=big("1e-70"))
    assert report.passed
    assert float(report.worst()) < 1e-70


def test_validate_catches_scaled_drifts():
    ruth = ruth_coefficients()
    bad = SplittingCoefficients(
        name="bad", scheme=ruth.scheme, stages=ruth.stages,
        c=tuple(x * big("1.01") for x in ruth.c), d=ruth.d)
    report = validate(bad)
    assert not report.passed
    assert abs(float(report.sum_residual_c) - 0.01) < 1e-12


def test_validate_all_published_entries(table_entries):
    for name, cs in table_entries.items():
        report = validate(cs, tol=big("1e-70"))
        assert report.passed, f"{name}: worst {report.worst()}"


def test_ruth_closed_form_values():
    from sympint.precision import working_precision

    ruth = ruth_coefficients()
    # outer drifts carry the halved weights, inner kicks the full ones
    assert abs(float(ruth.outer[0]) - 0.6756035959798288170) < 1e-15
    assert abs(float(ruth.inner[1]) + 1.7024143839193152681) < 1e-15
    with working_precision(256):
        assert sum(ruth.c, big(0)) == 1
        assert sum(ruth.d, big(0)) == 1


def test_published_literals_reserialize_verbatim(table_entries):
    for name, spec in TABLE_ENTRIES.items():
        for literal in spec["outer"] + spec["inner"]:
            x = parse_decimal(literal, 256)
            assert fixed76(x) == literal, f"{name}: {literal[:20]}..."


def test_file_roundtrip_bit_identical(tmp_path, entries):
    for name in ("Ruth", "BAB's9o7H", "ABA1064", "leapfrog"):
        cs = entries[name]
        path = tmp_path / "set.coeffs"
        save_coefficient_file(cs, path)
        back = load_coefficient_file(path)
        assert back.c == cs.c and back.d == cs.d
        assert back.scheme == cs.scheme and back.stages == cs.stages


def test_file_with_published_literals_matches_catalog(tmp_path, entries):
    spec = TABLE_ENTRIES["BAB's8o7H"]
    lines = ["name BAB's8o7H", "scheme BAB", "stages 8", "digits 77"]
    lines += [f"d {i + 1} {v}" for i, v in enumerate(spec["outer"])]
    lines += [f"c {i + 1} {v}" for i, v in enumerate(spec["inner"])]
    lines.append("symmetry table4")
    path = tmp_path / "bab8.coeffs"
    path.write_text("\n".join(lines) + "\n")
    loaded = load_coefficient_file(path)
    cs = entries["BAB's8o7H"]
    assert loaded.c == cs.c and loaded.d == cs.d


def test_file_rejects_bad_sum(tmp_path):
    lines = ["name broken", "scheme BAB", "stages 1", "digits 16",
             "d 1 0.45", "symmetry table4"]
    # 1-stage BAB has no free parameters at all; use 3 stages with a skewed d
    lines = ["name broken", "scheme BAB", "stages 3", "digits 16",
             "d 1 0.4", "c 1 1.35", "symmetry table4"]
    path = tmp_path / "broken.coeffs"
    path.write_text("\n".join(lines) + "\n")
    # completion forces unit sums, so corrupt the file another way: bad index
    lines[4] = "d 2 0.4"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CoefficientFileError, match="indices"):
        load_coefficient_file(path)


def test_file_rejects_syntax_with_line_number(tmp_path):
    path = tmp_path / "syntax.coeffs"
    path.write_text("name x\nscheme BAB\nstages 3\ndigits 9\nd one 0.5\n")
    with pytest.raises(CoefficientFileError, match=":5"):
        load_coefficient_file(path)


def test_file_rejects_missing_footer(tmp_path):
    path = tmp_path / "nofooter.coeffs"
    path.write_text("name x\nscheme ABA\nstages 3\ndigits 9\nd 1 0.6756\nc 1 1.3512\n")
    with pytest.raises(CoefficientFileError, match="footer"):
        load_coefficient_file(path)


def test_file_rejects_checksum_mismatch(tmp_path, entries):
    path = tmp_path / "sum.coeffs"
    save_coefficient_file(entries["Ruth"], path)
    text = path.read_text().replace("checksum sha256 ", "checksum sha256 0000")
    path.write_text(text)
    with pytest.raises(CoefficientFileError, match="checksum"):
        load_coefficient_file(path)


def test_resolve_method_variants(entries):
    assert resolve_method("Ruth", entries).name == "Ruth"
    assert resolve_method("ruth", entries).name == "Ruth"
    assert resolve_method("BABs9o7H", entries).name == "BAB's9o7H"
    with pytest.raises(KeyError, match="available"):
        resolve_method("nope", entries)
    # stripping the prime marker makes the 6-stage o5H pair ambiguous
    with pytest.raises(KeyError):
        resolve_method("BABs6o5H".lower().replace("b", "B") + "'", entries)


def test_catalog_contents(entries):
    required = {"ABAs5o6H A", "ABAs5o6H B", "ABAs5o6H C", "BABs6o7H",
                "BABs6o5H", "BAB's6o5H", "BABs7o7H", "BAB's7o6H",
                "BAB's8o7H", "BAB's9o7H", "Ruth", "s5odr4", "ABA104",
                "ABA864", "ABA1064", "Yosh s7o6 A"}
    assert required <= set(entries)
    assert entries["Ruth"].provenance is Provenance.RUTH
    assert entries["ABA104"].provenance is Provenance.LITERATURE_REFERENCE
    for cs in entries.values():
        assert cs.k == cs.stages + 1
        assert len(cs.c) == cs.k and len(cs.d) == cs.k

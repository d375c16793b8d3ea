from trinogen.intpoly import Trinomial
from trinogen.ore import analyze_prime
from trinogen.plotting import plot_report, plot_scan_summary


def test_plot_report_writes_png(tmp_path):
    rep = analyze_prime(Trinomial(6, 1, 8, 15).to_poly(), 2)
    path = plot_report(rep, tmp_path / "r.png")
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_report_simple_factors_only(tmp_path):
    rep = analyze_prime(Trinomial(2, 1, 1, 1).to_poly(), 5)
    assert plot_report(rep, tmp_path / "s.png").exists()


def test_plot_scan_summary(tmp_path):
    recs = [{"trinomial": {"n": "6"}, "source": "dn1.4"}, {"trinomial": {"n": "6"}, "source": "dn1.4"}]
    assert plot_scan_summary(recs, tmp_path / "a.png").exists()
    assert plot_scan_summary([], tmp_path / "b.png").exists()

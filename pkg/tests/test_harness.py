from tenrank.harness import run_trials, strategy_gap, summarize


def test_trials_are_reproducible_and_independent_of_workers():
    a = run_trials(30, seed=5)
    b = run_trials(30, seed=5, workers=3)
    assert a == b
    assert [t.index for t in a] == list(range(30))


def test_regimes():
    for t in run_trials(20, seed=1, regime="detect"):
        assert 1 <= t.constructed_rank <= t.r_max
    for t in run_trials(20, seed=1, regime="sound"):
        assert 1 <= t.constructed_rank <= 2 * t.r_max
    for t in run_trials(20, seed=1, regime="fullrank"):
        assert t.constructed_rank == t.r_max + 3


def test_summary_counts():
    s = summarize(run_trials(25, seed=2, regime="fullrank"))
    assert s["trials"] == 25 and s["sound"] == 25 and s["full_rank_fallback"] == 25 and s["hits"] == 0


def test_strategy_gap_reports_fraction():
    frac, worse = strategy_gap(200, seed=0)
    assert 0.0 <= frac <= 1.0
    assert len(worse) == round(frac * 200)
    for dims, best, dp in worse:
        assert dp < best

import math

import pytest

from zetakkr.errors import (
    CatalogCoverageError,
    CatalogFormatError,
    CatalogOrderError,
    DomainError,
)
from zetakkr.specfun import theta_exact
from zetakkr.zeroscan import (
    ScanConfig,
    ZeroCatalog,
    exact_count,
    export_zeros_csv,
    find_zeros,
    load_catalog,
    merge_catalogs,
    s_function,
    save_catalog,
)

from _oracles import MP_ZEROS_29


class TestScan:
    def test_census_to_100(self, catalog_100):
        assert len(catalog_100) == 29
        assert abs(catalog_100.heights[0] - MP_ZEROS_29[0]) < 1e-6
        assert catalog_100.max_height_scanned == 100.0
        assert catalog_100.source == "computed"

    def test_empty_below_first_zero(self):
        catalog = find_zeros(ScanConfig(t_min=0.0, t_max=13.0, grid_step=0.05))
        assert len(catalog) == 0

    def test_tenth_zero(self):
        catalog = find_zeros(ScanConfig(t_min=0.0, t_max=50.0, grid_step=0.05))
        assert len(catalog) == 10
        assert abs(catalog.heights[9] - MP_ZEROS_29[9]) < 1e-4

    def test_count_stable_under_grid_halving(self):
        fine = find_zeros(ScanConfig(t_min=0.0, t_max=100.0, grid_step=0.025))
        assert len(fine) == 29

    def test_all_29_near_reference(self, catalog_100):
        # summation-regime zeros (t <= 50) to 1e-6; main-sum regime carries
        # the Z accuracy floor, a few parts in 1e-4 at worst
        for got, ref in zip(catalog_100.heights, MP_ZEROS_29):
            tol = 1e-6 if ref <= 50.0 else 5e-4
            assert abs(got - ref) < tol

    def test_scan_range_limit(self):
        with pytest.raises(DomainError):
            find_zeros(ScanConfig(t_min=0.0, t_max=2.0e4, grid_step=0.05))

    def test_config_validation(self):
        with pytest.raises(DomainError):
            ScanConfig(t_min=10.0, t_max=5.0)
        with pytest.raises(DomainError):
            ScanConfig(t_min=0.0, t_max=10.0, grid_step=-1.0)
        with pytest.raises(DomainError):
            ScanConfig(t_min=0.0, t_max=10.0, grid_step=0.05, refine_tolerance=0.1)
        with pytest.raises(DomainError):
            ScanConfig(t_min=0.0, t_max=10.0, max_refinements=0)

    def test_partitioned_scan_merges_to_serial_result(self):
        serial = find_zeros(ScanConfig(t_min=0.0, t_max=60.0, grid_step=0.05))
        left = find_zeros(ScanConfig(t_min=0.0, t_max=30.0, grid_step=0.05))
        right = find_zeros(ScanConfig(t_min=30.0, t_max=60.0, grid_step=0.05))
        merged = merge_catalogs([left, right])
        assert merged.heights == serial.heights
        assert merged.max_height_scanned == serial.max_height_scanned

    def test_interlacing_gaps_at_desk_scale(self, catalog_1000):
        assert len(catalog_1000) == 649
        gaps = [b - a for a, b in zip(catalog_1000.heights, catalog_1000.heights[1:])]
        assert 0.3 < min(gaps)
        assert max(gaps) < 10.0


class TestCounting:
    def test_count_at_100(self, catalog_100):
        assert exact_count(catalog_100, 100.0) == 29

    def test_count_below_first_zero(self, catalog_100):
        assert exact_count(catalog_100, 10.0) == 0

    def test_count_between_first_two(self, catalog_100):
        assert exact_count(catalog_100, 14.2) == 1

    def test_monotone(self, catalog_100):
        counts = [exact_count(catalog_100, e) for e in [10.0 + 0.9 * i for i in range(100)]]
        assert all(b >= a for a, b in zip(counts, counts[1:]))

    def test_out_of_range(self, catalog_100):
        with pytest.raises(CatalogCoverageError):
            exact_count(catalog_100, 100.5)

    def test_count_fluctuation_identity(self, catalog_100):
        for e in (14.2, 25.5, 50.0, 77.7, 99.9):
            n = exact_count(catalog_100, e)
            s = s_function(catalog_100, e)
            assert n == round(1.0 + theta_exact(e) / math.pi + s)

    def test_s_function_small_at_low_heights(self, catalog_100):
        assert abs(s_function(catalog_100, 50.0)) < 1.5
        mids = [
            0.5 * (a + b) for a, b in zip(catalog_100.heights, catalog_100.heights[1:])
        ]
        assert all(abs(s_function(catalog_100, m)) < 1.5 for m in mids)

    def test_s_function_below_first_zero(self, catalog_100):
        expected = -1.0 - theta_exact(10.0) / math.pi
        assert math.isclose(s_function(catalog_100, 10.0), expected, rel_tol=1e-12)

    def test_s_function_domain(self, catalog_100):
        with pytest.raises(DomainError):
            s_function(catalog_100, 5.0)


class TestPersistence:
    def test_round_trip_is_lossless(self, catalog_100, tmp_path):
        path = tmp_path / "zeros.txt"
        save_catalog(catalog_100, path)
        loaded = load_catalog(path)
        assert loaded.heights == catalog_100.heights
        assert loaded.max_height_scanned == catalog_100.max_height_scanned
        assert loaded.source == "loaded"

    def test_load_plain_table(self, tmp_path):
        path = tmp_path / "three.txt"
        path.write_text("# a published-style table\n14.1\n21.0\n25.0\n")
        catalog = load_catalog(path)
        assert len(catalog) == 3
        assert catalog.max_height_scanned == 25.0

    def test_load_rejects_decreasing_pair(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("14.1\n21.0\n20.9\n")
        with pytest.raises(CatalogOrderError) as err:
            load_catalog(path)
        assert err.value.line_number == 3

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("14.1\nnot-a-number\n")
        with pytest.raises(CatalogFormatError) as err:
            load_catalog(path)
        assert err.value.line_number == 2

    def test_csv_export_format(self, catalog_100, tmp_path):
        path = tmp_path / "zeros.csv"
        with open(path, "w") as fh:
            export_zeros_csv(catalog_100, fh)
        lines = path.read_text().splitlines()
        assert lines[0] == "n,t"
        assert len(lines) == 30
        first = lines[1].split(",")
        assert first[0] == "1"
        assert len(first[1].split(".")[1]) == 9

    def test_catalog_validation(self):
        with pytest.raises(CatalogOrderError):
            ZeroCatalog(heights=(14.1, 14.1), source="loaded", max_height_scanned=20.0)
        with pytest.raises(DomainError):
            ZeroCatalog(heights=(14.1,), source="computed", max_height_scanned=10.0)
        with pytest.raises(DomainError):
            ZeroCatalog(heights=(14.1,), source="nonsense", max_height_scanned=20.0)

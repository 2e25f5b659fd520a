import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from attrscope.errors import UnknownImageError, ValidationError
from attrscope.model import AttributeCatalog, Space, attribute_indicator, decide

from .conftest import build_dataset, prd_from_decisions


class TestDecide:
    def test_values_each_side_of_cutoff(self):
        assert decide([0.6, 0.4]).tolist() == [1, 0]

    def test_boundary_maps_positive(self):
        assert decide([0.5]).tolist() == [1]

    def test_extremes_and_just_below(self):
        assert decide([0.0, 1.0, 0.49999]).tolist() == [0, 1, 0]

    def test_custom_threshold(self):
        assert decide([0.3, 0.7], threshold=0.25).tolist() == [1, 1]

    @pytest.mark.parametrize("threshold", [0.0, 1.0, -0.1, 1.5])
    def test_threshold_out_of_range(self, threshold):
        with pytest.raises(ValidationError):
            decide([0.5], threshold=threshold)

    @given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=20))
    def test_idempotent_on_own_output(self, probs):
        first = decide(probs)
        again = decide(first.astype(np.float64))
        assert np.array_equal(first, again)


class TestAttributeIndicator:
    def test_act_read_through(self, tiny_dataset):
        out = attribute_indicator(tiny_dataset, ["img0", "img1", "img2"], 0, Space.ACT)
        assert out.tolist() == [1, 1, 0]

    def test_prd_composes_with_decide(self, tiny_dataset):
        out = attribute_indicator(tiny_dataset, ["img0", "img3"], 2, Space.PRD)
        assert out.tolist() == [1, 1]

    def test_empty_group(self, tiny_dataset):
        assert attribute_indicator(tiny_dataset, [], 0, Space.ACT).tolist() == []

    def test_unknown_id_names_the_id(self, tiny_dataset):
        with pytest.raises(UnknownImageError) as err:
            attribute_indicator(tiny_dataset, ["nope"], 0, Space.ACT)
        assert "nope" in str(err.value)

    def test_attribute_out_of_range(self, tiny_dataset):
        with pytest.raises(ValidationError):
            attribute_indicator(tiny_dataset, ["img0"], 3, Space.ACT)

    def test_full_dataset_sum_matches_positive_counts(self, rings_dataset):
        for attr in range(rings_dataset.n_attributes):
            indicator = attribute_indicator(rings_dataset, rings_dataset.ids, attr, Space.ACT)
            assert indicator.sum() == rings_dataset.act[:, attr].sum()


class TestDataset:
    def test_arrays_are_read_only(self, tiny_dataset):
        with pytest.raises(ValueError):
            tiny_dataset.act[0, 0] = 0
        with pytest.raises(ValueError):
            tiny_dataset.prd[0, 0] = 0.0
        with pytest.raises(ValueError):
            tiny_dataset.fea[0, 0] = 0.0

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValidationError):
            build_dataset([[1], [0]], [[0.9], [0.1]], names=("x",), ids=["a", "a"])

    def test_non_binary_act_rejected(self):
        with pytest.raises(ValidationError):
            build_dataset([[2]], [[0.9]], names=("x",))

    def test_prd_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            build_dataset([[1]], [[1.5]], names=("x",))

    def test_non_finite_fea_rejected(self):
        with pytest.raises(ValidationError):
            build_dataset([[1]], [[0.9]], fea=[[np.nan]], names=("x",))

    def test_record_view(self, tiny_dataset):
        record = tiny_dataset.record("img1")
        assert record.id == "img1"
        assert record.act.tolist() == [1, 1, 0]


class TestCatalog:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValidationError):
            AttributeCatalog(("Ring", "Ring"))

    def test_empty_names_rejected(self):
        with pytest.raises(ValidationError):
            AttributeCatalog(("Ring", ""))

    def test_index_lookup(self):
        catalog = AttributeCatalog(("Ring", "Halo"))
        assert catalog.index_of("Halo") == 1
        with pytest.raises(ValidationError):
            catalog.index_of("Spots")

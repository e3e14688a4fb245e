import numpy as np
import pytest

from tileguard import (
    DetectionMethod,
    Image,
    PipelineOptions,
    StructuringElement,
    Threshold,
    add,
    binarize,
    boundary_extraction,
    closing,
    dilate,
    dilation_pipeline,
    erode,
    erosion_pipeline,
    opening,
    pixel_count,
    run_method,
    smee,
    smooth,
    subtract,
)
from util import random_binary, random_gray

FIXED = Threshold.fixed(0.5)


def block_in(height, width, top, left, size):
    pixels = np.zeros((height, width))
    pixels[top : top + size, left : left + size] = 1.0
    return Image(pixels)


class TestSmooth:
    def test_block_is_fixed_point(self, block_image, se3):
        assert smooth(block_image, se3) == block_image

    def test_all_background(self, se3):
        img = Image.constant(6, 6, 0.0)
        assert smooth(img, se3) == img

    def test_isolated_pixel_removed(self, single_pixel_image, se3):
        # step through the three stages: the closing keeps the pixel,
        # the opening erases it, the final closing has nothing left
        closed = closing(single_pixel_image, se3)
        opened = opening(closed, se3)
        assert pixel_count(smooth(single_pixel_image, se3)) == 0
        assert smooth(single_pixel_image, se3) == closing(opened, se3)

    def test_matches_composition_on_random_input(self, rng, se3):
        img = random_binary(rng, 20, 20)
        assert smooth(img, se3) == closing(opening(closing(img, se3), se3), se3)

    def test_requires_origin_in_se(self, block_image):
        hollow = np.ones((3, 3), dtype=bool)
        hollow[1, 1] = False
        se = StructuringElement(hollow, (1, 1))
        with pytest.raises(ValueError, match="origin"):
            smooth(block_image, se)


class TestDilationPipeline:
    def test_rectangle_ring_count(self, se3):
        # smoothing keeps a 4x4 block intact, the dilation grows it to
        # 6x6, and the subtraction leaves the 20-pixel surrounding ring
        img = block_in(10, 10, 3, 3, 4)
        result = dilation_pipeline(img, se3, FIXED)
        assert result.count == 36 - 16 == 20
        smoothed = smooth(binarize(img, FIXED), se3)
        assert result.residual == subtract(dilate(smoothed, se3), smoothed)

    def test_all_background(self, se3):
        result = dilation_pipeline(Image.constant(8, 8, 0.0), se3, FIXED)
        assert result.count == 0

    def test_residual_disjoint_from_smoothed(self, rng, se3):
        img = random_binary(rng, 24, 24)
        result = dilation_pipeline(img, se3, FIXED)
        smoothed = smooth(binarize(img, FIXED), se3)
        merged = add(result.residual, smoothed)
        assert pixel_count(merged) == result.count + pixel_count(smoothed)


class TestErosionPipeline:
    def test_literal_residual_is_smoothed_image(self, se3):
        img = block_in(7, 7, 2, 2, 3)
        result = erosion_pipeline(img, se3, FIXED)
        assert result.count == 9
        assert result.residual == smooth(binarize(img, FIXED), se3)

    def test_literal_invariant_random(self, rng, se3):
        img = random_binary(rng, 20, 20)
        result = erosion_pipeline(img, se3, FIXED, variant="literal")
        assert result.residual == smooth(binarize(img, FIXED), se3)

    def test_difference_variant_is_inner_ring(self, se3):
        img = block_in(7, 7, 2, 2, 3)
        result = erosion_pipeline(img, se3, FIXED, variant="difference")
        smoothed = smooth(binarize(img, FIXED), se3)
        assert result.residual == subtract(smoothed, erode(smoothed, se3))
        assert result.count == 8

    def test_all_background(self, se3):
        assert erosion_pipeline(Image.constant(8, 8, 0.0), se3, FIXED).count == 0

    def test_rejects_unknown_variant(self, block_image, se3):
        with pytest.raises(ValueError, match="variant"):
            erosion_pipeline(block_image, se3, FIXED, variant="bogus")


class TestSmee:
    def test_single_pixel_ring(self, single_pixel_image, se3):
        result = smee(single_pixel_image, se3)
        assert result.count == 8
        assert result.residual.pixels[2, 2] == 0.0

    def test_constant_image_yields_nothing(self, se3):
        for level in (0.0, 0.4, 1.0):
            assert smee(Image.constant(6, 6, level), se3).count == 0

    def test_runs_on_grayscale_directly(self, rng, se3):
        img = random_gray(rng, 12, 12)
        result = smee(img, se3)
        assert result.residual == subtract(dilate(img, se3), img)


class TestBoundaryExtraction:
    def test_block_perimeter(self, block_image, se3):
        result = boundary_extraction(block_image, se3)
        assert result.count == 8
        assert result.residual.pixels[2, 2] == 0.0

    def test_all_foreground_yields_nothing(self, se3):
        assert boundary_extraction(Image.constant(6, 6, 1.0), se3).count == 0


class TestRunMethod:
    def test_deterministic_modulo_timing(self, rng, se3):
        img = random_gray(rng, 16, 16)
        first = run_method(DetectionMethod.SMEE, img, se3)
        second = run_method(DetectionMethod.SMEE, img, se3)
        assert first.residual == second.residual
        assert first.count == second.count

    @pytest.mark.parametrize(
        "method,ops",
        [
            (DetectionMethod.SMEE, 1),
            (DetectionMethod.BOUNDARY, 1),
            (DetectionMethod.DILATION, 7),
            (DetectionMethod.EROSION, 7),
        ],
    )
    def test_elementary_ops(self, rng, se3, method, ops):
        img = random_gray(rng, 10, 10)
        result = run_method(method, img, se3, FIXED)
        assert result.elementary_ops == ops
        assert result.method is method

    def test_dispatch_matches_direct_calls(self, rng, se3):
        img = random_gray(rng, 14, 14)
        assert (
            run_method(DetectionMethod.BOUNDARY, img, se3).residual
            == boundary_extraction(img, se3).residual
        )
        assert (
            run_method(DetectionMethod.DILATION, img, se3, FIXED).residual
            == dilation_pipeline(img, se3, FIXED).residual
        )

    def test_binarize_all_applies_to_smee(self, rng, se3):
        img = random_gray(rng, 12, 12)
        opts = PipelineOptions(binarize_all=True)
        result = run_method(DetectionMethod.SMEE, img, se3, FIXED, opts)
        assert result.residual == smee(binarize(img, FIXED), se3).residual
        assert result.residual.is_binary

    def test_erosion_variant_option(self, rng, se3):
        img = random_binary(rng, 12, 12)
        opts = PipelineOptions(erosion_variant="difference")
        result = run_method(DetectionMethod.EROSION, img, se3, FIXED, opts)
        assert result.residual == erosion_pipeline(img, se3, FIXED, variant="difference").residual

    def test_result_invariants(self, rng, se3):
        gray = random_gray(rng, 15, 11)
        binary = random_binary(rng, 15, 11)
        for method in DetectionMethod:
            for img in (gray, binary):
                result = run_method(method, img, se3, FIXED)
                assert result.count == pixel_count(result.residual)
                assert result.residual.shape == img.shape
                assert result.elapsed_seconds >= 0.0
                assert 0.0 <= result.residual.pixels.min()
                assert result.residual.pixels.max() <= 1.0
            binary_result = run_method(method, binary, se3, FIXED)
            assert binary_result.residual.is_binary

    def test_options_validation(self):
        with pytest.raises(ValueError, match="erosion_variant"):
            PipelineOptions(erosion_variant="nope")

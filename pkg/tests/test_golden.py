"""Byte-exact regression against a checked-in reference report."""

import pathlib

from treeharmonics.engine import bounds_report
from treeharmonics.serialize import report_to_json
from treeharmonics.spherical import ball_kernel

GOLDEN = pathlib.Path(__file__).parent / "golden" / "report_q2_p15_R10_ball2.json"


def test_reference_report_is_byte_stable():
    rep = bounds_report(ball_kernel(2, 2), 1.5, radius=10)
    assert report_to_json(rep) == GOLDEN.read_text()

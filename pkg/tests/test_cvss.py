import itertools

import pytest

from cvssagg.cvss import (
    AttackComplexity,
    AttackVector,
    CvssVector,
    Impact,
    PrivilegesRequired,
    Scope,
    UserInteraction,
    all_vectors,
    base_score,
    parse_vector,
    render_vector,
    roundup,
    score_vector,
)
from cvssagg.errors import (
    DuplicateMetric,
    MalformedVector,
    MissingMetric,
    UnsupportedMetricGroup,
)

N, L, H = Impact.NONE, Impact.LOW, Impact.HIGH


def vec(av="N", ac="L", pr="N", ui="N", s="U", c="H", i="H", a="H"):
    return CvssVector(
        AttackVector(av), AttackComplexity(ac), PrivilegesRequired(pr),
        UserInteraction(ui), Scope(s), Impact(c), Impact(i), Impact(a),
    )


class TestParse:
    def test_network_critical(self):
        v = parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")
        assert v == CvssVector(
            AttackVector.NETWORK, AttackComplexity.LOW, PrivilegesRequired.NONE,
            UserInteraction.NONE, Scope.UNCHANGED, H, H, H,
        )

    def test_local(self):
        v = parse_vector("AV:L/AC:L/PR:L/UI:N/S:U/C:H/I:H/A:H")
        assert v.attack_vector is AttackVector.LOCAL
        assert v.privileges_required is PrivilegesRequired.LOW

    def test_missing_availability(self):
        with pytest.raises(MissingMetric) as exc:
            parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H")
        assert exc.value.name == "A"

    def test_bad_value_reports_position(self):
        with pytest.raises(MalformedVector) as exc:
            parse_vector("CVSS:3.1/AV:N/AC:Q/PR:N/UI:N/S:U/C:H/I:H/A:H")
        assert exc.value.token == "AC:Q"
        assert exc.value.position == len("CVSS:3.1/AV:N/")

    @pytest.mark.parametrize(
        "text",
        [
            "AV:X/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
            "av:n/ac:l/pr:n/ui:n/s:u/c:h/i:h/a:h",
            "AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H/",
            "AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H/XX:Y",
            "AVN/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
            "CVSS:2.0/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
            "CVSS:4.0/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
            "",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(MalformedVector):
            parse_vector(text)

    def test_non_string(self):
        with pytest.raises(MalformedVector):
            parse_vector(None)

    def test_duplicate(self):
        with pytest.raises(DuplicateMetric) as exc:
            parse_vector("AV:N/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")
        assert exc.value.name == "AV"

    @pytest.mark.parametrize("extra", ["E:F", "RL:O", "RC:C", "CR:H", "MAV:N"])
    def test_temporal_environmental_rejected(self, extra):
        with pytest.raises(UnsupportedMetricGroup):
            parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H/" + extra)

    def test_v30_prefix_accepted_rendered_as_31(self):
        v = parse_vector("CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")
        assert render_vector(v).startswith("CVSS:3.1/")

    def test_metric_order_is_free_on_input(self):
        a = parse_vector("A:H/I:H/C:H/S:U/UI:N/PR:N/AC:L/AV:N")
        assert a == vec()


class TestRender:
    def test_canonical(self):
        assert render_vector(vec()) == "CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H"

    def test_prefix_added(self):
        v = parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")
        assert str(v) == "CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H"

    def test_round_trip_all_vectors(self):
        vectors = list(all_vectors())
        assert len(vectors) == 4 * 2 * 3 * 2 * 2 * 3 * 3 * 3 == 2592
        assert len(set(vectors)) == 2592
        for v in vectors:
            assert parse_vector(render_vector(v)) == v


class TestBaseScore:
    @pytest.mark.parametrize(
        "v, expected",
        [
            (vec(), 9.8),
            (vec(av="L", pr="L"), 7.8),
            (vec(ac="H"), 8.1),
            (vec(i="N", a="N"), 7.5),
        ],
    )
    def test_table_scores(self, v, expected):
        assert base_score(v) == expected

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N", 6.1),
            ("CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:L/I:N/A:N", 5.3),
            ("CVSS:3.1/AV:P/AC:H/PR:H/UI:R/S:U/C:L/I:N/A:N", 1.6),
            ("CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:C/C:H/I:H/A:H", 10.0),
            ("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:U/C:H/I:H/A:N", 8.1),
            ("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:U/C:N/I:L/A:N", 4.3),
            ("CVSS:3.1/AV:N/AC:L/PR:L/UI:N/S:C/C:L/I:L/A:N", 6.4),
            ("CVSS:3.1/AV:L/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N", 0.0),
        ],
    )
    def test_published_nvd_vectors(self, text, expected):
        assert score_vector(text) == expected

    def test_roundup_guards_float_noise(self):
        assert roundup(4.000000000000001) == 4.0
        assert roundup(4.02) == 4.1
        assert roundup(4.0) == 4.0
        assert roundup(0.0) == 0.0

    def test_range_granularity_and_zero(self):
        for v in all_vectors():
            s = base_score(v)
            assert 0.0 <= s <= 10.0
            assert abs(s * 10 - round(s * 10)) < 1e-9
            no_impact = v.confidentiality is v.integrity is v.availability is Impact.NONE
            assert (s == 0.0) == no_impact

    def test_monotone_in_each_impact_metric(self):
        order = [N, L, H]
        for v in all_vectors():
            for field in ("confidentiality", "integrity", "availability"):
                cur = getattr(v, field)
                idx = order.index(cur)
                if idx < 2:
                    raised = CvssVector(**{**v.__dict__, field: order[idx + 1]})
                    assert base_score(raised) >= base_score(v)

    def test_monotone_in_complexity(self):
        for v in all_vectors():
            if v.attack_complexity is AttackComplexity.HIGH:
                easier = CvssVector(**{**v.__dict__, "attack_complexity": AttackComplexity.LOW})
                assert base_score(easier) >= base_score(v)

    def test_deterministic(self):
        for v in itertools.islice(all_vectors(), 0, 2592, 97):
            assert base_score(v) == base_score(v)

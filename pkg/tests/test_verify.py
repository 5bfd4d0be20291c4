import random
from fractions import Fraction
from functools import partial

import pytest

from hyperbranch.config import HyperbranchConfig
from hyperbranch.degeneration import Chain
from hyperbranch.errors import ErrorType, HyperbranchError, create_error
from hyperbranch.params import Family, ParamPoint, make_params
from hyperbranch.scalars import GaussRational
from hyperbranch.verify import (
    ERROR,
    FAIL,
    PASS,
    SKIP,
    SUITES,
    CheckReport,
    Job,
    SuiteFilter,
    branching_support_check,
    cauchy_check,
    column_row_check,
    construction_check,
    degeneration_check,
    first_difference,
    hermite_branching_check,
    hermite_extraction_check,
    orthogonality_oracle,
    pieri_closure_check,
    product_formula_check,
    recurrence_check,
    run_job,
    run_suite,
    run_suite_async,
    suite_jobs,
)


@pytest.fixture
def config() -> HyperbranchConfig:
    cfg = HyperbranchConfig()
    cfg.seed = 7
    cfg.param_points = 1
    cfg.max_retries = 2
    cfg.param_height = 12
    cfg.workers = 2
    return cfg


@pytest.fixture
def laguerre() -> ParamPoint:
    return make_params(Family.LAGUERRE, {"g": "2/3", "h": 3, "omega": 2})


@pytest.fixture
def hermite() -> ParamPoint:
    return make_params(Family.HERMITE, {"g": "3/2", "omega": 2})


class TestFirstDifference:
    def test_equal_maps(self) -> None:
        terms = {(2,): GaussRational(1), (): GaussRational(Fraction(1, 2))}

        assert first_difference(terms, dict(terms)) is None

    def test_missing_keys_count_as_zero(self) -> None:
        assert first_difference({(1,): GaussRational(0)}, {}) is None

    def test_reports_the_highest_differing_term(self) -> None:
        lhs = {(2,): GaussRational(1), (1,): GaussRational(3), (): GaussRational(1)}
        rhs = {(2,): GaussRational(1), (1,): GaussRational(2), (): GaussRational(2)}

        assert first_difference(lhs, rhs) == {
            "term": [1],
            "lhs": {"re": "3", "im": "0"},
            "rhs": {"re": "2", "im": "0"},
        }


class TestCheckReport:
    def test_json_without_timings(self) -> None:
        report = CheckReport("pieri", "laguerre", {"n": 1}, elapsed=0.25)

        payload = report.to_json()

        assert payload["status"] == PASS
        assert payload["sizes"] == {"n": 1}
        assert "elapsed" not in payload

    def test_json_with_timings(self) -> None:
        report = CheckReport("pieri", "laguerre", {"n": 1}, elapsed=0.25)

        assert report.to_json(timings=True)["elapsed"] == 0.25

    def test_passed(self) -> None:
        assert CheckReport("cauchy", "aw", {}).passed
        assert not CheckReport("cauchy", "aw", {}, status=FAIL).passed


class TestPieriClosure:
    def test_laguerre_one_variable(self, laguerre: ParamPoint) -> None:
        report = pieri_closure_check(Family.LAGUERRE, 1, (1,), 1, laguerre)

        assert report.status == PASS
        assert report.counterexample is None
        assert report.params == laguerre.to_json()

    def test_perturbed_run_fails(self, laguerre: ParamPoint) -> None:
        report = pieri_closure_check(
            Family.LAGUERRE, 1, (1,), 1, laguerre, perturb=True
        )

        assert report.status == FAIL
        assert report.counterexample is not None

    def test_whittaker_is_not_available(self) -> None:
        params = make_params(
            Family.WHITTAKER,
            {"q": 0, "t": "1/2", "t0": 2, "t1": 3, "t2": 5, "t3": 7},
        )

        with pytest.raises(HyperbranchError) as info:
            pieri_closure_check(Family.WHITTAKER, 1, (1,), 1, params)
        assert info.value.error_type is ErrorType.UNSUPPORTED_FAMILY


class TestRecurrence:
    @pytest.mark.parametrize("name", ["laguerre", "hermite"])
    def test_matches_moments(self, name: str, request: pytest.FixtureRequest) -> None:
        params = request.getfixturevalue(name)

        report = recurrence_check(params.family, 3, params)

        assert report.status == PASS

    def test_perturbed_run_fails(self, laguerre: ParamPoint) -> None:
        report = recurrence_check(Family.LAGUERRE, 3, laguerre, perturb=True)

        assert report.status == FAIL
        assert report.detail == "pieri"

    def test_elapsed_is_recorded(self, laguerre: ParamPoint) -> None:
        report = recurrence_check(Family.LAGUERRE, 1, laguerre)

        assert report.elapsed >= 0


class TestBranchingSupport:
    def test_non_preceding_pairs_vanish(self, laguerre: ParamPoint) -> None:
        report = branching_support_check((2, 2, 2), 2, laguerre)

        assert report.status == PASS
        assert report.detail.endswith("non-preceding pairs evaluated")

    def test_perturbed_run_fails(self, laguerre: ParamPoint) -> None:
        report = branching_support_check((2, 2, 2), 2, laguerre, perturb=True)

        assert report.status == FAIL


class TestSuiteJobs:
    def test_unknown_suite(self, config: HyperbranchConfig) -> None:
        with pytest.raises(HyperbranchError) as info:
            suite_jobs("nonsense", config)
        assert info.value.error_type is ErrorType.VALIDATION

    def test_every_suite_has_a_builder(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.HERMITE, n=1)

        for name in SUITES:
            suite_jobs(name, config, selection)

    def test_family_filter(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.LAGUERRE)

        jobs = suite_jobs("recurrence", config, selection)

        assert [job.family for job in jobs] == [Family.LAGUERRE]

    def test_partition_filter(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.JACOBI, n=2, lam=(2, 1), r=1)

        jobs = suite_jobs("pieri", config, selection)

        assert [job.sizes for job in jobs] == [{"n": 2, "lambda": [2, 1], "r": 1}]

    def test_partition_with_too_many_parts(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.JACOBI, n=1, lam=(2, 1))

        assert suite_jobs("pieri", config, selection) == []

    def test_all_concatenates_suites(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.LAGUERRE, n=1)

        combined = suite_jobs("all", config, selection)
        separate = [
            job for name in SUITES for job in suite_jobs(name, config, selection)
        ]

        assert [job.check for job in combined] == [job.check for job in separate]


def _fixed_draw(params: ParamPoint, rng: random.Random) -> ParamPoint:
    return params


def _raise(error_type: ErrorType, params: ParamPoint) -> CheckReport:
    raise create_error(error_type, "forced")


def _raise_foreign(params: ParamPoint) -> CheckReport:
    raise ValueError("no luck")


class TestRunJob:
    def job(self, params: ParamPoint, error_type: ErrorType) -> Job:
        return Job(
            "pieri",
            params.family,
            {"n": 1},
            0,
            partial(_raise, error_type),
            partial(_fixed_draw, params),
        )

    def test_non_generic_exhausts_retries(
        self, config: HyperbranchConfig, laguerre: ParamPoint
    ) -> None:
        report = run_job(self.job(laguerre, ErrorType.NON_GENERIC), config)

        assert report.status == ERROR
        assert report.seed == 7
        assert "2 retries" in report.detail

    def test_unsupported_parameters_skip(
        self, config: HyperbranchConfig, laguerre: ParamPoint
    ) -> None:
        report = run_job(self.job(laguerre, ErrorType.UNSUPPORTED_PARAMETERS), config)

        assert report.status == SKIP
        assert report.params == laguerre.to_json()

    def test_other_errors_fail(
        self, config: HyperbranchConfig, laguerre: ParamPoint
    ) -> None:
        report = run_job(self.job(laguerre, ErrorType.NOT_SYMMETRIC), config)

        assert report.status == FAIL
        assert report.detail.startswith(ErrorType.NOT_SYMMETRIC.value)

    def test_successful_job_is_stamped(
        self, config: HyperbranchConfig, laguerre: ParamPoint
    ) -> None:
        job = Job(
            "pieri",
            Family.LAGUERRE,
            {"n": 1, "lambda": [1], "r": 1},
            0,
            partial(pieri_closure_check, Family.LAGUERRE, 1, (1,), 1),
            partial(_fixed_draw, laguerre),
        )

        report = run_job(job, config)

        assert report.status == PASS
        assert report.seed == 7
        assert report.point == 0

    def test_unexpected_exceptions_become_errors(
        self, config: HyperbranchConfig, laguerre: ParamPoint
    ) -> None:
        job = Job(
            "pieri",
            Family.LAGUERRE,
            {"n": 1},
            0,
            _raise_foreign,
            partial(_fixed_draw, laguerre),
        )

        report = run_job(job, config)

        assert report.status == ERROR
        assert report.detail.startswith("ValueError")
        assert report.params == laguerre.to_json()


class TestRunSuite:
    def test_sequential(self, config: HyperbranchConfig) -> None:
        selection = SuiteFilter(family=Family.HERMITE)

        reports = run_suite("recurrence", config, selection)

        assert len(reports) == 1
        assert reports[0].check == "recurrence"
        assert reports[0].status == PASS
        assert reports[0].seed == 7

    async def test_threaded_matches_sequential(
        self, config: HyperbranchConfig
    ) -> None:
        selection = SuiteFilter(family=Family.LAGUERRE, n=1, lam=(1,))

        threaded = await run_suite_async("pieri", config, selection)
        sequential = run_suite("pieri", config, selection)

        assert [r.to_json() for r in threaded] == [r.to_json() for r in sequential]

    @pytest.mark.parametrize(
        ("name", "selection"),
        [
            ("cauchy", SuiteFilter(family=Family.LAGUERRE, m=1, n=1)),
            ("pieri", SuiteFilter(family=Family.LAGUERRE, n=1, lam=(1,), r=1)),
            ("construction", SuiteFilter(family=Family.LAGUERRE, n=1, lam=(1,))),
            ("recurrence", SuiteFilter(family=Family.HERMITE)),
            ("orthogonality", SuiteFilter(family=Family.HERMITE, n=1, lam=(1,))),
            ("hermite", SuiteFilter(family=Family.HERMITE, n=1, lam=(1,), r=1)),
            ("product", SuiteFilter(family=Family.HERMITE, lam=(1,))),
            ("column-row", SuiteFilter(family=Family.LAGUERRE, m=1)),
            ("degeneration", SuiteFilter(chain=Chain.CHAHN_HERMITE, n=1, lam=(1,))),
            ("whittaker", SuiteFilter(family=Family.WHITTAKER, n=1, lam=(1,), r=1)),
        ],
    )
    def test_every_suite_reports(
        self, config: HyperbranchConfig, name: str, selection: SuiteFilter
    ) -> None:
        reports = run_suite(name, config, selection)

        assert reports
        assert all(report.status != ERROR for report in reports)

    def test_suite_table_is_covered(self) -> None:
        covered = {
            "cauchy",
            "pieri",
            "construction",
            "recurrence",
            "orthogonality",
            "hermite",
            "product",
            "column-row",
            "degeneration",
            "whittaker",
        }

        assert covered == set(SUITES)


class TestSmallIdentities:
    def test_cauchy_one_by_one(self, hermite: ParamPoint) -> None:
        assert cauchy_check(Family.HERMITE, 1, 1, hermite).status == PASS

        perturbed = cauchy_check(Family.HERMITE, 1, 1, hermite, perturb=True)

        assert perturbed.status == FAIL

    def test_column_row_single_column(self, hermite: ParamPoint) -> None:
        assert column_row_check(Family.HERMITE, 1, hermite).status == PASS

        perturbed = column_row_check(Family.HERMITE, 1, hermite, perturb=True)

        assert perturbed.status == FAIL


class TestConstruction:
    def test_laguerre_two_variables(self, laguerre: ParamPoint) -> None:
        report = construction_check(Family.LAGUERRE, (2, 1), 2, laguerre)

        assert report.status == PASS

    def test_hermite_matches_the_limit(self, hermite: ParamPoint) -> None:
        report = construction_check(Family.HERMITE, (1, 1), 2, hermite)

        assert report.status == PASS

    def test_perturbed_leading_coefficient(self, laguerre: ParamPoint) -> None:
        report = construction_check(
            Family.LAGUERRE, (2, 1), 2, laguerre, perturb=True
        )

        assert report.status == FAIL
        assert report.detail == "monic"


class TestHermiteChecks:
    def test_extraction_one_variable(self, hermite: ParamPoint) -> None:
        assert hermite_extraction_check((1,), 1, 1, hermite).status == PASS

    def test_perturbed_extraction_fails(self, hermite: ParamPoint) -> None:
        report = hermite_extraction_check((1,), 1, 1, hermite, perturb=True)

        assert report.status == FAIL

    def test_branching_from_one_to_two_variables(self, hermite: ParamPoint) -> None:
        assert hermite_branching_check((1,), 1, hermite).status == PASS

    def test_perturbed_branching_fails(self, hermite: ParamPoint) -> None:
        report = hermite_branching_check((1,), 1, hermite, perturb=True)

        assert report.status == FAIL


class TestOrthogonality:
    def test_hermite_pair(self) -> None:
        params = make_params(Family.HERMITE, {"g": 1, "omega": 1})

        assert orthogonality_oracle(Family.HERMITE, 2, (1, 1), params).status == PASS

    def test_perturbed_pair_fails(self) -> None:
        params = make_params(Family.HERMITE, {"g": 1, "omega": 1})

        report = orthogonality_oracle(
            Family.HERMITE, 2, (1, 1), params, perturb=True
        )

        assert report.status == FAIL
        assert report.counterexample is not None
        assert report.counterexample["term"] == []

    @pytest.mark.parametrize("g", [0, 1])
    @pytest.mark.parametrize("lam", [(1,), (2,), (2, 1)])
    def test_hermite_at_non_generic_g(self, g: int, lam: tuple[int, ...]) -> None:
        params = make_params(Family.HERMITE, {"g": g, "omega": 1})

        assert orthogonality_oracle(Family.HERMITE, 2, lam, params).status == PASS

    def test_empty_partition(self) -> None:
        params = make_params(Family.LAGUERRE, {"g": 1, "h": 2, "omega": 1})

        assert orthogonality_oracle(Family.LAGUERRE, 2, (), params).status == PASS

        report = orthogonality_oracle(Family.LAGUERRE, 2, (), params, perturb=True)

        assert report.status == FAIL
        assert report.counterexample is not None
        assert report.counterexample["term"] == []


class TestProductFormula:
    def test_jack_single_box(self, hermite: ParamPoint) -> None:
        assert product_formula_check("jack", (1,), (), hermite).status == PASS

    def test_jack_two_boxes(self, hermite: ParamPoint) -> None:
        # 2g/(g+1), the m_(1,1) coefficient of the Jack polynomial P_(2)
        report = product_formula_check("jack", (2,), (1,), hermite)

        assert report.status == PASS

    def test_perturbed_product_fails(self, hermite: ParamPoint) -> None:
        report = product_formula_check("jack", (1,), (), hermite, perturb=True)

        assert report.status == FAIL

    def test_needs_a_horizontal_strip(self, hermite: ParamPoint) -> None:
        with pytest.raises(HyperbranchError) as info:
            product_formula_check("jack", (1, 1), (), hermite)
        assert info.value.error_type is ErrorType.VALIDATION

    def test_kind_must_match_family(self, laguerre: ParamPoint) -> None:
        with pytest.raises(HyperbranchError) as info:
            product_formula_check("jack", (1,), (), laguerre)
        assert info.value.error_type is ErrorType.UNSUPPORTED_FAMILY


class TestDegenerationCheck:
    def test_constant_polynomial(self, hermite: ParamPoint) -> None:
        report = degeneration_check(
            Chain.CHAHN_HERMITE, (), 1, hermite, [Fraction(1, 2)]
        )

        assert report.status == PASS
        assert report.sizes["point"] == ["1/2"]

    def test_perturbed_target_fails(self, hermite: ParamPoint) -> None:
        report = degeneration_check(
            Chain.CHAHN_HERMITE, (), 1, hermite, [Fraction(1, 2)], perturb=True
        )

        assert report.status == FAIL
        assert report.counterexample is not None
        assert "errors" in report.counterexample

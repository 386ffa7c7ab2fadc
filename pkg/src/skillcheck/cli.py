"""Command-line front end.

Every capability is a subcommand emitting CSV or JSON on stdout. Floats
are printed with 12 significant digits and exact probabilities also carry
their numerator and denominator, so output stays both spreadsheet-friendly
and exact. Sampling subcommands require an explicit --seed: identical
arguments always produce identical bytes.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import compare, dice, estimate, evidence, logistic, resolve

MECHANIC_CHOICES = ("roll-under", "roll-over", "sum", "binomial", "pool", "step", "max")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _add_mechanic_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("mechanic flags")
    group.add_argument("--mechanic", choices=MECHANIC_CHOICES, help="die mechanic family")
    group.add_argument("--dice", type=int, default=1, help="number of dice (default 1)")
    group.add_argument("--sides", type=int, help="faces per die")
    group.add_argument("--target", type=int, help="roll-under target")
    group.add_argument("--modifier", type=int, default=0, help="additive roll modifier")
    group.add_argument("--difficulty", type=int, default=0, help="difficulty to meet or beat")
    group.add_argument("--threshold", type=int, help="face value a pool die must reach")
    group.add_argument("--required", type=int, help="pool successes required")


def _build_mechanic(args, parser: argparse.ArgumentParser) -> dice.Mechanic:
    if args.mechanic is None:
        parser.error("--mechanic is required")
    if args.sides is None:
        parser.error("--sides is required")
    kind = args.mechanic
    if kind == "roll-under":
        if args.target is None:
            parser.error("--target is required for roll-under")
        return dice.UniformRollUnder(sides=args.sides, target=args.target)
    if kind == "roll-over":
        return dice.UniformRollOver(
            sides=args.sides, modifier=args.modifier, difficulty=args.difficulty
        )
    if kind == "sum":
        return dice.SumRollOver(
            dice=args.dice, sides=args.sides, modifier=args.modifier,
            difficulty=args.difficulty,
        )
    if kind == "binomial":
        if args.threshold is None or args.required is None:
            parser.error("--threshold and --required are required for binomial")
        return dice.BinomialPool(
            dice=args.dice, sides=args.sides, threshold=args.threshold,
            required=args.required,
        )
    if kind == "pool":
        return dice.GeneralPool(dice=args.dice, sides=args.sides, difficulty=args.difficulty)
    if kind == "step":
        return dice.StepDie(sides=args.sides, difficulty=args.difficulty)
    return dice.MaxPool(dice=args.dice, sides=args.sides, difficulty=args.difficulty)


def _parse_model(text: str) -> logistic.FourPL:
    return logistic.FourPL.from_dict(json.loads(text))


def _cmd_dist(args, parser) -> None:
    mech = _build_mechanic(args, parser)
    if args.success:
        p = dice.success_probability(mech)
        print("num,den,float")
        print(f"{p.numerator},{p.denominator},{float(p):.12g}")
    else:
        print(dice.dist_to_csv(dice.outcome_distribution(mech)), end="")


def _cmd_check(args, parser) -> None:
    rng = resolve.SplitMix64(args.seed)
    if (args.model is None) == (args.mechanic is None):
        parser.error("give exactly one of --model or --mechanic")
    if args.model is not None:
        result = resolve.resolve_model(_parse_model(args.model), rng)
    else:
        result = resolve.resolve_mechanic(_build_mechanic(args, parser), rng)
    raw = "" if result.raw_roll is None else str(result.raw_roll)
    print("success,probability,raw_roll")
    print(f"{int(result.success)},{_fmt(result.probability_used)},{raw}")


def _cmd_opposed(args, parser) -> None:
    modes = [
        args.skill_a is not None or args.skill_b is not None,
        args.logit_a is not None or args.logit_b is not None,
        args.rating_a is not None or args.rating_b is not None,
    ]
    if sum(modes) != 1:
        parser.error("give exactly one pairing: --skill-a/-b, --logit-a/-b or --rating-a/-b")
    if modes[0]:
        if args.skill_a is None or args.skill_b is None:
            parser.error("both --skill-a and --skill-b are required")
        print("probability")
        print(_fmt(resolve.opposed(args.skill_a, args.skill_b)))
    elif modes[1]:
        if args.logit_a is None or args.logit_b is None:
            parser.error("both --logit-a and --logit-b are required")
        print("probability")
        print(_fmt(resolve.opposed_logit(args.logit_a, args.logit_b)))
    else:
        if args.rating_a is None or args.rating_b is None:
            parser.error("both --rating-a and --rating-b are required")
        expected = resolve.elo_expected(args.rating_a, args.rating_b)
        if args.score is None:
            print("expected_a")
            print(_fmt(expected))
        else:
            ra = resolve.Rating(args.rating_a, args.k)
            rb = resolve.Rating(args.rating_b, args.k)
            new_a, new_b = resolve.elo_update(ra, rb, args.score)
            print("expected_a,new_rating_a,new_rating_b")
            print(f"{_fmt(expected)},{_fmt(new_a.value)},{_fmt(new_b.value)}")


def _cmd_grade(args, parser) -> None:
    g = evidence.jeffreys_grade(args.factor)
    w = evidence.weight_of_evidence(args.factor)
    print("grade,label,log10L")
    print(f"{g.grade},{g.label},{_fmt(w)}")


def _cmd_evidence(args, parser) -> None:
    factors = args.factor or []
    if args.reliability is not None:
        if len(factors) != 1:
            parser.error("--reliability needs exactly one --factor")
        odds = evidence.update_reliable(args.prior, factors[0], args.reliability)
    else:
        odds = evidence.update(args.prior, factors)
    print("odds,probability")
    print(f"{_fmt(odds)},{_fmt(logistic.odds_to_prob(odds))}")


def _report_rows(report: compare.ComparisonReport, name_a: str, name_b: str, summary: bool) -> None:
    if summary:
        print("sup_distance,argmax")
        print(f"{_fmt(report.sup_distance)},{_fmt(report.argmax_point)}")
        return
    print(f"x,{name_a},{name_b},abs_diff")
    for x, a, b in zip(report.grid, report.cdf_a, report.cdf_b):
        print(f"{_fmt(x)},{_fmt(a)},{_fmt(b)},{_fmt(abs(a - b))}")


def _cmd_compare(args, parser) -> None:
    if args.pair == "dice":
        mech = _build_mechanic(args, parser)
        report = compare.discrete_vs_logistic(dice.outcome_distribution(mech))
        _report_rows(report, "dice_cdf", "logistic_cdf", args.summary)
        return
    lp = compare.LogisticParams(mean=args.mean, scale=args.scale)
    if args.pair == "normal":
        report = compare.normal_vs_logistic(lp)
        _report_rows(report, "normal", "logistic", args.summary)
    else:
        report = compare.uniform_vs_logistic(lp)
        _report_rows(report, "uniform", "logistic", args.summary)


def _cmd_figure(args, parser) -> None:
    print(compare.figure_data(args.which), end="")


def _cmd_fit(args, parser) -> None:
    if args.input == "-":
        records = estimate.read_outcome_csv(sys.stdin)
    else:
        records = estimate.read_outcome_csv(args.input)
    result = estimate.fit_rasch(
        records,
        slope=args.slope,
        ridge=args.ridge,
        max_iter=args.max_iter,
        tol=args.tol,
    )
    print(result.to_json(digits=12))


def _cmd_simulate(args, parser) -> None:
    if (args.model is None) == (args.mechanic is None):
        parser.error("give exactly one of --model or --mechanic")
    rng = resolve.SplitMix64(args.seed)
    if args.model is not None:
        target = _parse_model(args.model)
        exact = target.probability()
    else:
        target = _build_mechanic(args, parser)
        exact = float(dice.success_probability(target))
    if args.aggregate:
        successes = resolve.simulate_count(target, args.n, rng)
        rate = successes / args.n if args.n else 0.0
        print("n,successes,rate,exact_probability")
        print(f"{args.n},{successes},{_fmt(rate)},{_fmt(exact)}")
        return
    print("trial,success")
    if isinstance(target, logistic.FourPL):
        for i in range(1, args.n + 1):
            print(f"{i},{int(resolve.resolve_model(target, rng).success)}")
    else:
        for i in range(1, args.n + 1):
            print(f"{i},{int(resolve.resolve_mechanic(target, rng).success)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skillcheck",
        description="Dice mechanics, logistic task resolution and skill estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="exact outcome distribution of a die mechanic")
    _add_mechanic_flags(p)
    p.add_argument("--success", action="store_true", help="print the success probability instead")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("check", help="resolve one seeded check")
    _add_mechanic_flags(p)
    p.add_argument("--model", help="logistic model as JSON")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("opposed", help="chance of one skill beating another, or an Elo update")
    p.add_argument("--skill-a", type=float, help="multiplicative skill of A")
    p.add_argument("--skill-b", type=float, help="multiplicative skill of B")
    p.add_argument("--logit-a", type=float, help="logit skill of A")
    p.add_argument("--logit-b", type=float, help="logit skill of B")
    p.add_argument("--rating-a", type=float, help="Elo rating of A")
    p.add_argument("--rating-b", type=float, help="Elo rating of B")
    p.add_argument("--k", type=float, default=32.0, help="Elo k-factor (default 32)")
    p.add_argument("--score", type=float, choices=[0.0, 0.5, 1.0], help="game result for A")
    p.set_defaults(func=_cmd_opposed)

    p = sub.add_parser("grade", help="grade a likelihood ratio on the evidence scale")
    p.add_argument("--factor", type=float, required=True, help="likelihood ratio")
    p.set_defaults(func=_cmd_grade)

    p = sub.add_parser("evidence", help="revise odds by likelihood ratios")
    p.add_argument("--prior", type=float, default=1.0, help="prior odds (default 1)")
    p.add_argument("--factor", type=float, action="append", help="likelihood ratio (repeatable)")
    p.add_argument("--reliability", type=float, help="discount exponent for a single factor")
    p.set_defaults(func=_cmd_evidence)

    p = sub.add_parser("compare", help="sup distance between matched chance curves")
    p.add_argument("--pair", choices=("normal", "uniform", "dice"), required=True)
    p.add_argument("--mean", type=float, default=0.0, help="logistic mean (default 0)")
    p.add_argument("--scale", type=float, default=1.0, help="logistic scale (default 1)")
    p.add_argument("--summary", action="store_true", help="print only sup distance and argmax")
    _add_mechanic_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("figure", help="CSV series behind the reference figures")
    p.add_argument("which", choices=compare.FIGURE_IDS)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("fit", help="fit ability and difficulty logits from outcomes CSV")
    p.add_argument("--input", required=True, help="CSV path with header person,task,success, or -")
    p.add_argument("--ridge", type=float, default=0.01, help="ridge penalty (default 0.01)")
    p.add_argument("--slope", type=float, default=1.0, help="fixed discrimination (default 1)")
    p.add_argument("--max-iter", type=int, default=500, help="iteration cap (default 500)")
    p.add_argument("--tol", type=float, default=1e-8, help="gradient tolerance (default 1e-8)")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("simulate", help="run many seeded checks")
    _add_mechanic_flags(p)
    p.add_argument("--model", help="logistic model as JSON")
    p.add_argument("--n", type=int, required=True, help="number of trials")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.add_argument("--aggregate", action="store_true", help="print one summary row")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

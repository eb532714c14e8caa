"""Smoke tests for the python module and the CLI binary."""

import os
import subprocess
import sys
import tempfile

import _mwps

ASSETS = os.environ.get("MWP_ASSETS", "")
CLI = os.environ.get("MWP_CLI", "")

checks = 0


def check(cond, what):
    global checks
    checks += 1
    if not cond:
        print(f"FAIL: {what}")
        sys.exit(1)
    print(f"ok: {what}")


def main():
    solver = _mwps.Solver(asset_dir=ASSETS)

    res = solver.solve(
        "Mike takes 86 minutes to walk to school. If he rides a bicycle to school, "
        "it would save him 64 minutes. How much time did Mike save?"
    )
    check(res["answer"] == "22", "solve returns 22 for the walk-to-school problem")

    res = solver.solve(
        "A sandwich is priced at $0.75. A pudding is priced at $0.25. Tim bought 2 sandwiches "
        "and 4 puddings. Mary bought 2 puddings. How much money should Tim pay?"
    )
    check(res["answer"] == "2.5", "solve returns 2.5 for the sandwich problem")
    check(res["solution_type"] == "Sum", "sandwich problem solves via Sum")
    check("quan(" in res["trace"] and "ask Sum(" in res["trace"], "trace carries the logic form")

    res = solver.solve(
        "Tim bought 2 roses and 3 lilies. Mary bought 4 roses and 5 lilies. "
        "How many flowers did Tim buy?"
    )
    check(res["solution_type"] == "Addition", "flower problem solves via Addition")
    check(sorted(res["operands"]) == ["q1", "q2"], "flower problem selects q1 and q2")

    conll = solver.annotate("Tim bought 2 roses.")
    check("buy" in conll and "nsubj" in conll, "annotate emits lemmas and relations")

    try:
        solver.solve("Tim zorked 3 blargs. How many blargs did Tim zork?")
        check(False, "out-of-grammar text raises")
    except _mwps.SolverError:
        check(True, "out-of-grammar text raises SolverError")

    micro = os.path.join(ASSETS, "micro_corpus.jsonl")
    ev = solver.evaluate(micro)
    check(abs(ev["accuracy"] - 1.0) < 1e-9, "evaluate reports accuracy 1.0 on the bundled corpus")

    pp = solver.perplexity(micro)
    check(pp["pp"] > 1.0 and pp["skipped"] == 0, "perplexity runs over the bundled corpus")

    variants = solver.noisify(
        "Tim has 10 yellow flowers and 12 red flowers. How many flowers does Tim have?",
        "new-subject",
        seed=7,
    )
    check(len(variants) == 1 and "Tim has 10" in variants[0], "noisify appends a noisy sentence")

    # CLI round trip
    if CLI:
        out = subprocess.run(
            [CLI, "solve", "--text",
             "Pack 100 candies into 5 boxes. How many candies are there in each box?"],
            capture_output=True, text=True, env=os.environ,
        )
        check(out.returncode == 0 and out.stdout.strip() == "20", "CLI solve prints 20")

        out = subprocess.run([CLI, "definitely-not-a-command"], capture_output=True, text=True,
                             env=os.environ)
        check(out.returncode == 2, "unknown subcommand exits with code 2")

        out = subprocess.run([CLI], capture_output=True, text=True, env=os.environ)
        check(out.returncode == 2, "missing subcommand exits with code 2")

        out = subprocess.run(
            [CLI, "solve", "--text", "Tim zorked 3 blargs. How many blargs did Tim zork?"],
            capture_output=True, text=True, env=os.environ,
        )
        check(out.returncode == 1 and "annotation error" in out.stderr,
              "out-of-grammar text exits 1 naming the stage")

        args = [CLI, "solve", "--text",
                "Joan had 5 marbles. She bought 3 marbles. How many marbles does Joan have now?"]
        first = subprocess.run(args, capture_output=True, text=True, env=os.environ)
        second = subprocess.run(args, capture_output=True, text=True, env=os.environ)
        check(first.stdout == second.stdout and first.stdout.strip() == "8",
              "identical invocations produce byte-identical stdout")

        with tempfile.TemporaryDirectory() as tmp:
            text = ("Mike takes 86 minutes to walk to school. If he rides a bicycle to school, "
                    "it would save him 64 minutes. How much time did Mike save?")
            problem_file = os.path.join(tmp, "problem.txt")
            with open(problem_file, "w") as fh:
                fh.write(text + "\n")
            out = subprocess.run([CLI, "solve", "--in", problem_file], capture_output=True,
                                 text=True, env=os.environ)
            check(out.returncode == 0 and out.stdout.strip() == "22", "CLI solve --in reads a file")

            ann_file = os.path.join(tmp, "problem.ann")
            with open(ann_file, "w") as fh:
                fh.write(solver.annotate(text))
            out = subprocess.run(
                [CLI, "solve", "--text", text, "--annotation", ann_file],
                capture_output=True, text=True, env=os.environ,
            )
            check(out.returncode == 0 and out.stdout.strip() == "22",
                  "CLI solve accepts an external annotation file")

            model_dir = os.path.join(tmp, "models")
            os.mkdir(model_dir)
            out = subprocess.run(
                [CLI, "train", "--data", micro, "--out", model_dir, "--seed", "1"],
                capture_output=True, text=True, env=os.environ,
            )
            check(out.returncode == 0 and "labelable" in out.stdout, "CLI train writes models")

            out = subprocess.run(
                [CLI, "eval", "--data", micro, "--models", model_dir],
                capture_output=True, text=True, env=os.environ,
            )
            check(out.returncode == 0 and "accuracy=1.000" in out.stdout,
                  "CLI eval reports accuracy=1.000")

            noisy = os.path.join(tmp, "noisy.jsonl")
            out = subprocess.run(
                [CLI, "noisify", "--kind", "new-entity", "--seed", "3", "--in", micro,
                 "--out", noisy],
                capture_output=True, text=True, env=os.environ,
            )
            check(out.returncode == 0 and os.path.exists(noisy), "CLI noisify writes a dataset")

            out = subprocess.run([CLI, "perplexity", "--data", micro], capture_output=True,
                                 text=True, env=os.environ)
            check(out.returncode == 0 and "pp=" in out.stdout, "CLI perplexity prints pp=")

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()

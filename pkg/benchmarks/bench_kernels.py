"""Times the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from kgsynth.kernels import ANY, END, RUN, compiled_kernels, python_kernels


def workloads(seed: int = 0):
    rng = random.Random(seed)
    alphabet = "abcdef ,"
    texts = ["".join(rng.choice(alphabet) for _ in range(rng.randint(5, 40))) for _ in range(300)]
    patterns = [
        ((RUN, ", "),),
        ((RUN, " "), (END, "")),
        ((ANY, ""), (RUN, ","), (ANY, "")),
        ((RUN, "a"), (RUN, "b"), (END, "")),
    ]
    triples = [["".join(rng.choice("abcd") for _ in range(30)) for _ in range(3)] for _ in range(200)]
    return texts, patterns, triples


def run_regex(kernels, texts, patterns):
    for s in texts:
        for p in patterns:
            kernels.regex_search(s, p)


def run_factor(kernels, triples):
    for t in triples:
        kernels.longest_common_factor(t)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    texts, patterns, triples = workloads()
    backends = [("python", python_kernels)]
    if compiled_kernels is not None:
        backends.append(("cython", compiled_kernels))
    else:
        print("compiled kernels not built; timing the fallback only")
    results = {}
    for name, k in backends:
        regex = min(timeit.repeat(lambda: run_regex(k, texts, patterns), number=1, repeat=args.repeat))
        factor = min(timeit.repeat(lambda: run_factor(k, triples), number=1, repeat=args.repeat))
        results[name] = (regex, factor)
        print(f"{name:7s} regex_search {regex * 1e3:8.2f} ms   longest_common_factor {factor * 1e3:8.2f} ms")
    if len(results) == 2:
        (pr, pf), (cr, cf) = results["python"], results["cython"]
        print(f"speedup regex_search x{pr / cr:.1f}   longest_common_factor x{pf / cf:.1f}")


if __name__ == "__main__":
    main()

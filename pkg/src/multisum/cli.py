"""Command line interface.

Three subcommands: ``summarize`` runs the pipeline over a JSONL corpus and
writes one summary per line, ``eval`` scores a summary file against
references, ``baseline`` emits the First-n lead baseline.  Flags override a
flat "key = value" config file, which overrides built-in defaults.  Exit
codes: 0 success, 1 data error, 2 usage/resource error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, clustnum, lexsem, pipeline, rougeeval, sentgraph, wordgraph
from .corpus import load_docsets


def _bool(text: str) -> bool:
    t = text.strip().casefold()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _csv(text: str) -> tuple[str, ...]:
    return tuple(x.strip().casefold() for x in text.split(",") if x.strip())


_CONFIG_SCHEMA = {
    "method": str,
    "seed": int,
    "max_input": int,
    "max_output": int,
    "annotator": str,
    "embeddings": str,
    "lexicon": str,
    "threads": int,
    "fluency": _bool,
    "k_paths": int,
    "min_tokens": int,
    "require_verb": _bool,
    "enumeration_budget": int,
    "adjacent_only_distance": _bool,
    "ngram_order": int,
    "sigma": float,
    "beta": float,
    "ttr_band": str,
    "sim_sentence_threshold": float,
    "sim_word_threshold": float,
    "neighbor_m": int,
    "conjunctions": _csv,
    "non_notional_verbs": _csv,
    "row_normalize": _bool,
    "unreachable_distance": float,
}


def parse_config_file(path) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            key = key.strip()
            caster = _CONFIG_SCHEMA.get(key)
            if caster is None:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = caster(val.strip())
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return values


def _merged_settings(args) -> dict:
    settings = dict(getattr(args, "config_values", {}) or {})
    direct = {
        "method": args.method, "seed": args.seed,
        "max_input": args.max_input, "max_output": args.max_output,
        "annotator": args.annotator, "embeddings": args.embeddings,
        "lexicon": args.lexicon, "threads": args.threads,
        "k_paths": args.k_paths, "min_tokens": args.min_tokens,
        "enumeration_budget": args.enumeration_budget,
        "ngram_order": args.ngram_order,
        "sigma": args.sigma, "beta": args.beta, "ttr_band": args.ttr_band,
        "sim_sentence_threshold": args.sim_sentence_threshold,
        "sim_word_threshold": args.sim_word_threshold,
        "neighbor_m": args.neighbor_m,
    }
    for key, value in direct.items():
        if value is not None:
            settings[key] = value
    if args.no_fluency:
        settings["fluency"] = False
    if args.adjacent_only_distance:
        settings["adjacent_only_distance"] = True
    if args.row_normalize:
        settings["row_normalize"] = True
    if args.no_truncate:
        settings["max_input"] = 0
    return settings


def build_pipeline_config(settings: dict, args) -> pipeline.PipelineConfig:
    ttr_kwargs = {}
    for src, dst in (("sigma", "sigma"), ("beta", "beta"),
                     ("ttr_band", "ttr_band")):
        if src in settings:
            ttr_kwargs[dst] = settings[src]
    ind_kwargs = {}
    for key in ("sim_sentence_threshold", "sim_word_threshold", "neighbor_m"):
        if key in settings:
            ind_kwargs[key] = settings[key]
    if "conjunctions" in settings:
        ind_kwargs["conjunctions"] = tuple(settings["conjunctions"])
    if "non_notional_verbs" in settings:
        ind_kwargs["non_notional_verbs"] = frozenset(settings["non_notional_verbs"])
    wg_kwargs = {}
    for src, dst in (("k_paths", "k_paths"), ("min_tokens", "min_tokens"),
                     ("require_verb", "require_verb"),
                     ("enumeration_budget", "enumeration_budget"),
                     ("adjacent_only_distance", "adjacent_only_distance"),
                     ("fluency", "fluency"), ("ngram_order", "ngram_order")):
        if src in settings:
            wg_kwargs[dst] = settings[src]
    max_input = settings.get("max_input", 500)
    return pipeline.PipelineConfig(
        method=settings.get("method", "ttr"),
        max_input_tokens=max_input if max_input and max_input > 0 else None,
        max_output_tokens=settings.get("max_output", 256),
        seed=settings.get("seed", 0),
        annotator=settings.get("annotator", "builtin"),
        row_normalize=settings.get("row_normalize", False),
        unreachable_distance=settings.get("unreachable_distance"),
        threads=settings.get("threads", 1),
        ttr=clustnum.TtrConfig(**ttr_kwargs),
        indicators=sentgraph.IndicatorConfig(**ind_kwargs),
        wordgraph=wordgraph.WordGraphConfig(**wg_kwargs),
        collect_graph=bool(args.dump_graph),
        collect_clusters=bool(args.dump_clusters),
        collect_wordgraphs=bool(args.dump_wordgraph),
    )


def _write_lines(path: str, lines: list[str]):
    if path == "-":
        for line in lines:
            print(line)
        return
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


def _write_jsonl(path: str, records: list[dict]):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _cmd_summarize(args) -> int:
    settings = _merged_settings(args)
    emb_path = settings.get("embeddings")
    lex_path = settings.get("lexicon")
    if not emb_path:
        print("summarize: --embeddings is required", file=sys.stderr)
        return 2
    if not lex_path:
        print("summarize: --lexicon is required", file=sys.stderr)
        return 2
    store = lexsem.load_embeddings(emb_path)
    lex = lexsem.load_lexicon(lex_path)
    docsets = load_docsets(args.input)
    cfg = build_pipeline_config(settings, args)
    results = pipeline.summarize_corpus(docsets, cfg, store, lex)

    _write_lines(args.output, [r.summary for r in results])
    if args.diagnostics:
        _write_jsonl(args.diagnostics,
                     [{"docset": i, **r.diagnostics}
                      for i, r in enumerate(results)])
    if args.dump_graph:
        _write_jsonl(args.dump_graph,
                     [{"docset": i, **r.artifacts.get("graph", {})}
                      for i, r in enumerate(results)])
    if args.dump_clusters:
        _write_jsonl(args.dump_clusters,
                     [{"docset": i, **r.artifacts.get("clusters", {})}
                      for i, r in enumerate(results)])
    if args.dump_wordgraph:
        records = []
        for i, r in enumerate(results):
            for payload in r.artifacts.get("wordgraphs", []):
                records.append({"docset": i, **payload})
        _write_jsonl(args.dump_wordgraph, records)
    return 0


def _load_references(path) -> list[list[str]]:
    refs = []
    with open(path, encoding="utf-8") as fh:
        recno = 0
        for line in fh:
            if not line.strip():
                continue
            recno += 1
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"record {recno}: invalid JSON ({exc})") from None
            summary = record.get("summary") if isinstance(record, dict) else None
            if isinstance(summary, str):
                refs.append([summary])
            elif isinstance(summary, list) and summary and \
                    all(isinstance(s, str) for s in summary):
                refs.append(list(summary))
            else:
                raise ValueError(f"record {recno}: missing \"summary\"")
    return refs


def _cmd_eval(args) -> int:
    with open(args.system, encoding="utf-8") as fh:
        outputs = [line.rstrip("\n") for line in fh]
    references = _load_references(args.refs)
    report = rougeeval.evaluate_corpus(outputs, references)
    mean = report["mean"]
    print(f"rouge-1 f1 {mean['r1']:.4f}  rouge-2 f1 {mean['r2']:.4f}  "
          f"rouge-l f1 {mean['rl']:.4f}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_baseline(args) -> int:
    from .corpus import AnnotatorSpec, annotate, truncate_docset
    docsets = load_docsets(args.input)
    lines = []
    for ds in docsets:
        if args.max_input and args.max_input > 0:
            ds = truncate_docset(ds, args.max_input)
        ds = annotate(ds, AnnotatorSpec(args.annotator or "builtin"))
        lines.append(rougeeval.first_n_baseline(ds, args.first_n))
    _write_lines(args.output, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multisum",
        description="Unsupervised multi-document summarization over sentence "
                    "graphs, with spectral clustering and word-graph "
                    "compression.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("summarize", help="summarize a JSONL corpus")
    ps.add_argument("--input", required=True, help="JSONL corpus file")
    ps.add_argument("--output", default="-", help="summary file, one per line (default stdout)")
    ps.add_argument("--embeddings", help="word vector text file")
    ps.add_argument("--lexicon", help="verb<TAB>nouns derivational lexicon")
    ps.add_argument("--config", help="flat key = value config file")
    ps.add_argument("--method", help="ttr | distance | eigengap | fixed:<k>")
    ps.add_argument("--seed", type=int)
    ps.add_argument("--max-input", type=int, dest="max_input",
                    help="input token budget per docset (default 500)")
    ps.add_argument("--no-truncate", action="store_true",
                    help="disable input truncation")
    ps.add_argument("--max-output", type=int, dest="max_output",
                    help="output token budget (default 256)")
    ps.add_argument("--annotator", choices=["builtin", "pre"])
    ps.add_argument("--threads", type=int)
    ps.add_argument("--no-fluency", action="store_true",
                    help="pick the shortest valid path without re-ranking")
    ps.add_argument("--k-paths", type=int, dest="k_paths")
    ps.add_argument("--min-tokens", type=int, dest="min_tokens")
    ps.add_argument("--enumeration-budget", type=int, dest="enumeration_budget")
    ps.add_argument("--ngram-order", type=int, dest="ngram_order")
    ps.add_argument("--sigma", type=float)
    ps.add_argument("--beta", type=float)
    ps.add_argument("--ttr-band", choices=["three", "two"], dest="ttr_band")
    ps.add_argument("--sim-sentence-threshold", type=float,
                    dest="sim_sentence_threshold")
    ps.add_argument("--sim-word-threshold", type=float,
                    dest="sim_word_threshold")
    ps.add_argument("--neighbor-m", type=int, dest="neighbor_m")
    ps.add_argument("--adjacent-only-distance", action="store_true",
                    dest="adjacent_only_distance")
    ps.add_argument("--row-normalize", action="store_true",
                    dest="row_normalize")
    ps.add_argument("--diagnostics", help="write per-docset diagnostics JSONL")
    ps.add_argument("--dump-graph", dest="dump_graph",
                    help="write sentence-graph JSONL")
    ps.add_argument("--dump-clusters", dest="dump_clusters",
                    help="write cluster assignment JSONL")
    ps.add_argument("--dump-wordgraph", dest="dump_wordgraph",
                    help="write word-graph JSONL")
    ps.set_defaults(func=_cmd_summarize)

    pe = sub.add_parser("eval", help="score summaries against references")
    pe.add_argument("--system", required=True, help="summary file, one per line")
    pe.add_argument("--refs", required=True,
                    help="JSONL with a \"summary\" field per record")
    pe.add_argument("--report", help="write a JSON score report")
    pe.set_defaults(func=_cmd_eval)

    pb = sub.add_parser("baseline", help="First-n lead baseline")
    pb.add_argument("--input", required=True)
    pb.add_argument("--output", default="-")
    pb.add_argument("--first-n", type=int, default=2, dest="first_n")
    pb.add_argument("--max-input", type=int, default=0, dest="max_input")
    pb.add_argument("--annotator", choices=["builtin", "pre"])
    pb.set_defaults(func=_cmd_baseline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            args.config_values = parse_config_file(args.config)
        except FileNotFoundError as exc:
            print(f"multisum: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            print(f"multisum: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"multisum: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"multisum: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"multisum: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

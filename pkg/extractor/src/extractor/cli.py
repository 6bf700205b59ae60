"""Command-line extraction:

    extract --model <id-or-path> [--direction uni|bi] --schemes causal
            [--layers 0,2,4] --in sentences.tsv --out <dir>

``sentences.tsv`` carries two tab-separated columns, sentence_id and the
raw sentence.  One JSONL file per scheme (``logprobs_<scheme>.jsonl``) and,
when layers are requested, ``embeddings.jsonl`` land in the output
directory along with a manifest recording the checkpoint and settings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .embeddings import extract_embeddings, write_embeddings
from .jobs import (BIDIRECTIONAL, UNIDIRECTIONAL, ExtractionJob,
                   direction_for_model_type, read_sentences)
from .logprobs import extract_token_logprobs, write_records

DIRECTION_ALIASES = {"uni": UNIDIRECTIONAL, "unidirectional": UNIDIRECTIONAL,
                     "bi": BIDIRECTIONAL, "bidirectional": BIDIRECTIONAL}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extract", description=__doc__)
    parser.add_argument("--model", required=True)
    parser.add_argument("--direction", choices=sorted(DIRECTION_ALIASES),
                        default=None, help="inferred from the checkpoint "
                        "config when omitted")
    parser.add_argument("--schemes", default="",
                        help="comma-separated scheme list")
    parser.add_argument("--layers", default="",
                        help="comma-separated layer indices for embeddings")
    parser.add_argument("--in", dest="sentences", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--device", default="cpu")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        from transformers import AutoConfig

        config = AutoConfig.from_pretrained(args.model)
        if args.direction is not None:
            direction = DIRECTION_ALIASES[args.direction]
        else:
            direction = direction_for_model_type(config.model_type)
        schemes = tuple(s for s in args.schemes.split(",") if s)
        layers = tuple(int(v) for v in args.layers.split(",") if v)
        job = ExtractionJob(model_id=args.model, direction=direction,
                            schemes=schemes, layers=layers,
                            sentences=read_sentences(args.sentences),
                            device=args.device)
        # scheme/direction pairing is validated above, before any model load
        from transformers import (AutoModelForCausalLM, AutoModelForMaskedLM,
                                  AutoTokenizer)

        tokenizer = AutoTokenizer.from_pretrained(args.model)
        if direction == UNIDIRECTIONAL:
            model = AutoModelForCausalLM.from_pretrained(args.model)
        else:
            model = AutoModelForMaskedLM.from_pretrained(args.model)
        model.to(args.device)

        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for scheme in job.schemes:
            path = out_dir / f"logprobs_{scheme}.jsonl"
            write_records(extract_token_logprobs(model, tokenizer, job, scheme),
                          path)
            written.append(path.name)
        if job.layers:
            path = out_dir / "embeddings.jsonl"
            write_embeddings(extract_embeddings(model, tokenizer, job), path)
            written.append(path.name)
        manifest = {"model": args.model, "direction": direction,
                    "schemes": list(job.schemes), "layers": list(job.layers),
                    "sentences": len(job.sentences), "device": args.device,
                    "bos_convention": "model-native prefix token for causal "
                                      "scoring; EOS wrapped for final-token "
                                      "embeddings",
                    "outputs": written}
        with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except (ValueError, OSError, RuntimeError) as exc:
        print(json.dumps({"status": "error", "error": type(exc).__name__,
                          "message": str(exc)}), file=sys.stderr)
        return 1
    for name in written + ["manifest.json"]:
        print(Path(args.out) / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())

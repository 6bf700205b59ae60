"""Build and briefly train miniature checkpoints on a synthetic corpus.

No full-size pretrained checkpoints are assumed to be reachable; these
two-layer models (one causal, one masked) are trained in seconds on a
synthetic transitive-sentence corpus whose statistics carry the structure
the extraction tests need: impossible role assignments never occur,
unlikely ones occur at reduced (occasionally inverted) rates, and several
nouns tokenize into two word pieces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import torch
from tokenizers import Tokenizer, models, pre_tokenizers, processors
from transformers import (BertConfig, BertForMaskedLM, GPT2Config,
                          GPT2LMHeadModel, PreTrainedTokenizerFast)

AGENTS = ["teacher", "nanny", "doctor", "nurse", "farmer", "baker", "judge",
          "coach", "pilot", "guard", "singer", "tutor", "clerk", "monk",
          "mayor", "chef"]
PATIENTS = ["laptop", "basket", "ladder", "kettle", "mirror", "carpet",
            "candle", "wagon", "jacket", "bucket", "anchor", "poster",
            "drum", "flute", "crate", "globe"]
HUMANS = ["boy", "girl", "child", "student", "visitor", "tenant", "sailor",
          "tourist", "intern", "widow", "orphan", "vendor", "usher", "juror",
          "bride", "groom"]
AI_VERBS = ["bought", "carried", "cleaned", "painted", "lifted", "folded",
            "packed", "polished"]
AA_VERBS = ["tutored", "scolded", "praised", "rescued", "coached", "warned",
            "guarded", "teased"]

# words forced to split into two pieces under the toy tokenizer
SPLIT_WORDS = {"laptop": ("lap", "##top"), "basket": ("bas", "##ket"),
               "ladder": ("lad", "##der"), "kettle": ("ket", "##tle"),
               "teacher": ("tea", "##cher"), "student": ("stu", "##dent"),
               "visitor": ("visi", "##tor"), "carpet": ("car", "##pet")}

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "[BOS]", "[EOS]"]


def _vocab() -> dict[str, int]:
    words = set(AGENTS + PATIENTS + HUMANS + AI_VERBS + AA_VERBS)
    words |= {"The", "the"}
    tokens = list(SPECIALS)
    for word in sorted(words):
        if word in SPLIT_WORDS:
            tokens.extend(SPLIT_WORDS[word])
        else:
            tokens.append(word)
    return {tok: i for i, tok in enumerate(dict.fromkeys(tokens))}


def build_tokenizer(causal: bool) -> PreTrainedTokenizerFast:
    vocab = _vocab()
    core = Tokenizer(models.WordPiece(vocab, unk_token="[UNK]",
                                      max_input_chars_per_word=40))
    core.pre_tokenizer = pre_tokenizers.WhitespaceSplit()
    if not causal:
        core.post_processor = processors.TemplateProcessing(
            single="[CLS] $A [SEP]",
            special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])])
    wrapped = PreTrainedTokenizerFast(
        tokenizer_object=core, unk_token="[UNK]", pad_token="[PAD]",
        cls_token=None if causal else "[CLS]",
        sep_token=None if causal else "[SEP]",
        mask_token=None if causal else "[MASK]",
        bos_token="[BOS]" if causal else None,
        eos_token="[EOS]" if causal else None)
    return wrapped


@dataclass(frozen=True)
class EvalItem:
    pair_id: str
    item_type: str
    plausible: str
    implausible: str


def synthetic_corpus(seed: int = 0, n_items: int = 32):
    """Training sentences plus held-out-style evaluation pairs."""
    rng = torch.Generator().manual_seed(seed)

    def pick(seq, n):
        idx = torch.randperm(len(seq), generator=rng)[:n].tolist()
        return [seq[i] for i in idx]

    train: list[str] = []
    items: list[EvalItem] = []
    combos_ai = list(itertools.product(AGENTS, AI_VERBS, PATIENTS))
    combos_aa = list(itertools.product(AGENTS, AA_VERBS, HUMANS))
    for kind, combos in (("AI", combos_ai), ("AA", combos_aa)):
        chosen = pick(combos, n_items)
        for i, (a, v, p) in enumerate(chosen):
            plaus = f"The {a} {v} the {p}"
            implaus = f"The {p} {v} the {a}"
            items.append(EvalItem(f"{kind.lower()}-{i:03d}", kind, plaus, implaus))
            train += [plaus] * 10
            if kind == "AA":
                # the reversal is unlikely rather than unseen; a few items
                # invert the preference outright, as graded data does
                swap = int(torch.randint(2, 13, (1,), generator=rng))
                train += [implaus] * swap
    order = torch.randperm(len(train), generator=rng).tolist()
    return [train[i] for i in order], items


def _batches(encoded: list[list[int]], batch_size: int, pad_id: int,
             generator: torch.Generator):
    order = torch.randperm(len(encoded), generator=generator).tolist()
    for start in range(0, len(order), batch_size):
        chunk = [encoded[i] for i in order[start:start + batch_size]]
        width = max(len(row) for row in chunk)
        ids = torch.full((len(chunk), width), pad_id, dtype=torch.long)
        for r, row in enumerate(chunk):
            ids[r, :len(row)] = torch.tensor(row)
        yield ids


def train_causal_checkpoint(out_dir: str | Path, seed: int = 0,
                            epochs: int = 6) -> Path:
    torch.manual_seed(seed)
    tokenizer = build_tokenizer(causal=True)
    sentences, _ = synthetic_corpus(seed)
    bos = tokenizer.bos_token_id
    encoded = [[bos] + tokenizer(s, add_special_tokens=False)["input_ids"]
               for s in sentences]
    config = GPT2Config(vocab_size=len(tokenizer), n_positions=32, n_embd=64,
                        n_layer=2, n_head=4, bos_token_id=bos,
                        eos_token_id=tokenizer.eos_token_id)
    model = GPT2LMHeadModel(config)
    optimizer = torch.optim.Adam(model.parameters(), lr=3e-3)
    generator = torch.Generator().manual_seed(seed + 1)
    pad = tokenizer.pad_token_id
    model.train()
    for _ in range(epochs):
        for ids in _batches(encoded, 64, pad, generator):
            labels = ids.clone()
            labels[labels == pad] = -100
            loss = model(ids, labels=labels).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
    out_dir = Path(out_dir)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    return out_dir


def train_masked_checkpoint(out_dir: str | Path, seed: int = 0,
                            epochs: int = 30) -> Path:
    torch.manual_seed(seed)
    tokenizer = build_tokenizer(causal=False)
    sentences, _ = synthetic_corpus(seed)
    encoded = [tokenizer(s)["input_ids"] for s in sentences]
    config = BertConfig(vocab_size=len(tokenizer), hidden_size=64,
                        num_hidden_layers=2, num_attention_heads=4,
                        intermediate_size=128, max_position_embeddings=32,
                        pad_token_id=tokenizer.pad_token_id)
    model = BertForMaskedLM(config)
    optimizer = torch.optim.Adam(model.parameters(), lr=2e-3)
    generator = torch.Generator().manual_seed(seed + 1)
    pad = tokenizer.pad_token_id
    mask = tokenizer.mask_token_id
    keep_out = {pad, tokenizer.cls_token_id, tokenizer.sep_token_id}
    model.train()
    for _ in range(epochs):
        for ids in _batches(encoded, 64, pad, generator):
            labels = torch.full_like(ids, -100)
            maskable = torch.ones_like(ids, dtype=torch.bool)
            for tok in keep_out:
                maskable &= ids != tok
            chosen = maskable & (torch.rand(ids.shape, generator=generator) < 0.2)
            labels[chosen] = ids[chosen]
            corrupted = ids.clone()
            corrupted[chosen] = mask
            loss = model(corrupted, labels=labels).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
    out_dir = Path(out_dir)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    return out_dir

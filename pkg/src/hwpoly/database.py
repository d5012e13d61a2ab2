"""On-disk store of expanded highest weight polynomials.

Layout: ``<root>/<c>/<d>/<weight joined by '-'>/<tableau id>.hwp`` plus a
TSV manifest with per-file integrity data.  Builds are resumable: entries
whose file parses and whose term trailer matches are never recomputed, and
interrupted writes are detected by the missing trailer and rebuilt.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from .hashing import DEFAULT_P_CAP, build_hash_chain
from .hwp import HighestWeightPolynomial, read_hwp_file, write_hwp_file
from .seeding import derive_seed
from .tableaux import (
    check_partition,
    count_isobaric_tableaux,
    partitions_of,
    unrank_isobaric_tableau,
)

MANIFEST_COLUMNS = ("c", "d", "weight", "tableau_id", "terms", "sha256", "k", "p", "seed")


def _weight_str(lam) -> str:
    return "-".join(str(x) for x in lam)


@dataclass
class ManifestEntry:
    c: int
    d: int
    weight: tuple[int, ...]
    tableau_id: int
    terms: int
    sha256: str
    k: int
    p: int
    seed: int

    def key(self):
        return (self.c, self.d, self.weight, self.tableau_id)

    def to_row(self) -> str:
        return "\t".join(
            str(x)
            for x in (
                self.c, self.d, _weight_str(self.weight), self.tableau_id,
                self.terms, self.sha256, self.k, self.p, self.seed,
            )
        )

    @classmethod
    def from_row(cls, row: str) -> "ManifestEntry":
        parts = row.rstrip("\n").split("\t")
        if len(parts) != len(MANIFEST_COLUMNS):
            raise ValueError(f"manifest row has {len(parts)} columns: {row!r}")
        return cls(
            c=int(parts[0]), d=int(parts[1]),
            weight=tuple(int(x) for x in parts[2].split("-")),
            tableau_id=int(parts[3]), terms=int(parts[4]), sha256=parts[5],
            k=int(parts[6]), p=int(parts[7]), seed=int(parts[8]),
        )


class _ChainCacheMixin:
    """Shared expansion logic for the on-disk and in-memory stores."""

    p_cap = DEFAULT_P_CAP

    def _chain(self, lam, d, c, seed):
        key = (tuple(lam), d, c)
        chain = self._chains.get(key)
        if chain is None:
            chain = build_hash_chain(
                lam, d, c, seed=derive_seed("chain", seed, c, d, lam), p_cap=self.p_cap
            )
            self._chains[key] = chain
        return chain

    def _expand(self, lam, d, c, tid, seed, workers, progress):
        from .expander import expand_hwv

        tableau = unrank_isobaric_tableau(lam, d, c, tid)
        chain = self._chain(lam, d, c, seed)
        return expand_hwv(tableau, chain=chain, workers=workers, progress=progress)


class MemoryStore(_ChainCacheMixin):
    """Expansion cache with no persistence; used for one-off searches."""

    def __init__(self, p_cap: int = DEFAULT_P_CAP):
        self.p_cap = p_cap
        self._hwps: dict = {}
        self._chains: dict = {}

    def known_ids(self, c, d, lam):
        lam = tuple(lam)
        return sorted(t for (cc, dd, ww, t) in self._hwps if (cc, dd, ww) == (c, d, lam))

    def get_or_expand(self, lam, d, c, tid, seed=0, workers=1, progress=None):
        key = (c, d, tuple(lam), tid)
        hwp = self._hwps.get(key)
        if hwp is None:
            hwp = self._expand(lam, d, c, tid, seed, workers, progress)
            self._hwps[key] = hwp
        return hwp


class Database(_ChainCacheMixin):
    """Persistent store rooted at a directory, with a TSV manifest."""

    def __init__(self, root, p_cap: int = DEFAULT_P_CAP):
        self.root = Path(root)
        self.p_cap = p_cap
        self.root.mkdir(parents=True, exist_ok=True)
        self._chains: dict = {}
        self._entries: dict[tuple, ManifestEntry] = {}
        self._load_manifest()

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.tsv"

    def _load_manifest(self):
        if not self.manifest_path.exists():
            return
        with open(self.manifest_path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip() or line.startswith("#"):
                    continue
                entry = ManifestEntry.from_row(line)
                self._entries[entry.key()] = entry

    def _append_manifest(self, entry: ManifestEntry):
        new_file = not self.manifest_path.exists()
        with open(self.manifest_path, "a", encoding="utf-8", newline="\n") as fh:
            if new_file:
                fh.write("#" + "\t".join(MANIFEST_COLUMNS) + "\n")
            fh.write(entry.to_row() + "\n")
        self._entries[entry.key()] = entry

    def path_for(self, c, d, lam, tid) -> Path:
        return self.root / str(c) / str(d) / _weight_str(lam) / f"{tid:08d}.hwp"

    def entries(self) -> list[ManifestEntry]:
        return sorted(self._entries.values(), key=lambda e: e.key())

    def known_ids(self, c, d, lam) -> list[int]:
        lam = tuple(lam)
        return sorted(
            t for (cc, dd, ww, t) in self._entries if (cc, dd, ww) == (c, d, lam)
        )

    def has_valid_entry(self, c, d, lam, tid) -> bool:
        entry = self._entries.get((c, d, tuple(lam), tid))
        if entry is None:
            return False
        path = self.path_for(c, d, lam, tid)
        if not path.exists():
            return False
        try:
            hwp = read_hwp_file(path)
        except ValueError:
            return False
        return hwp.term_count() == entry.terms

    def load(self, c, d, lam, tid) -> HighestWeightPolynomial:
        return read_hwp_file(self.path_for(c, d, lam, tid))

    def store(self, hwp: HighestWeightPolynomial, tid: int) -> Path:
        path = self.path_for(hwp.c, hwp.d, hwp.weight, tid)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_hwp_file(path, hwp)
        k, p, seed = hwp.schemes[0] if hwp.schemes else (0, 0, 0)
        entry = ManifestEntry(
            c=hwp.c, d=hwp.d, weight=hwp.weight, tableau_id=tid,
            terms=hwp.term_count(), sha256=hashlib.sha256(path.read_bytes()).hexdigest(),
            k=k, p=p, seed=seed,
        )
        self._append_manifest(entry)
        return path

    def get_or_expand(self, lam, d, c, tid, seed=0, workers=1, progress=None):
        lam = tuple(lam)
        path = self.path_for(c, d, lam, tid)
        if (c, d, lam, tid) in self._entries and path.exists():
            try:
                return read_hwp_file(path)
            except ValueError:
                pass  # partial or corrupt file: fall through and rebuild
        hwp = self._expand(lam, d, c, tid, seed, workers, progress)
        self.store(hwp, tid)
        return hwp


def build(
    db: Database,
    d: int,
    c: int,
    weight=None,
    seed: int = 0,
    workers: int = 1,
    expand_all: bool = False,
    all_limit: int = 100_000,
    progress=None,
    log=None,
) -> list[ManifestEntry]:
    """Populate the database for degree parameters (d, c).

    Default mode expands, per weight, the tableaux examined by basis
    selection (multiplicity-many independent ones plus whatever was touched
    on the way); ``expand_all`` expands every tableau of the weight instead.
    Entries that already verify are skipped, so interrupted builds resume.
    Returns the manifest entries added by this call.
    """
    from .equations import plethysm_multiplicity, select_basis

    if weight is not None:
        lams = [check_partition(weight)]
    else:
        lams = partitions_of(d * c)
    before = set(db._entries)
    for lam in lams:
        total = count_isobaric_tableaux(lam, d, c)
        if total == 0:
            continue
        if expand_all:
            if total > all_limit:
                raise ValueError(
                    f"weight {lam} has {total} tableaux; --all refuses more than {all_limit}"
                )
            if log:
                log(f"weight {lam}: expanding all {total} tableaux")
            for tid in range(total):
                if not db.has_valid_entry(c, d, lam, tid):
                    db.get_or_expand(lam, d, c, tid, seed=seed, workers=workers, progress=progress)
        else:
            a = plethysm_multiplicity(lam, d, c)
            if a == 0:
                continue
            if log:
                log(f"weight {lam}: selecting {a} of {total} tableaux")
            select_basis(lam, d, c, db, seed=seed, workers=workers, progress=progress)
    return [e for k, e in sorted(db._entries.items()) if k not in before]


def verify(db: Database) -> list[str]:
    """Re-parse every file; report integrity problems (empty list = ok)."""
    problems = []
    for entry in db.entries():
        path = db.path_for(entry.c, entry.d, entry.weight, entry.tableau_id)
        if not path.exists():
            problems.append(f"{path}: missing file")
            continue
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        if digest != entry.sha256:
            problems.append(f"{path}: sha256 mismatch")
        try:
            hwp = read_hwp_file(path)
        except ValueError as exc:
            problems.append(str(exc))
            continue
        if hwp.term_count() != entry.terms:
            problems.append(
                f"{path}: manifest says {entry.terms} terms, file has {hwp.term_count()}"
            )
        if (hwp.c, hwp.d, hwp.weight) != (entry.c, entry.d, entry.weight):
            problems.append(f"{path}: header does not match manifest key")
        if not hwp.content_ok():
            problems.append(f"{path}: content invariant violated")
    # orphan files not present in the manifest
    for path in sorted(db.root.rglob("*.hwp")):
        rel = path.relative_to(db.root).parts
        if len(rel) != 4:
            problems.append(f"{path}: unexpected location")
            continue
        c, d, weight = int(rel[0]), int(rel[1]), tuple(int(x) for x in rel[2].split("-"))
        tid = int(path.stem)
        if (c, d, weight, tid) not in db._entries:
            problems.append(f"{path}: not in manifest")
    return problems

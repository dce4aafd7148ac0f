"""Write-once on-disk cache of canonical results.

Records are small text files named by the SHA-256 of their key. A record
holds a header (format version, ring tag, fingerprint, key) followed by the
canonical printed value, so the files can be read by eye.
"""
import hashlib
import json
import logging
import os
import tempfile

log = logging.getLogger(__name__)

VERSION = 1
ENV_VAR = "CHOWRING_CACHE_DIR"
MAGIC = "chowring-cache"


class CacheIntegrityError(RuntimeError):
    pass


def ring_fingerprint(bv):
    """Fingerprint of a BVRing: its NS Gram matrix and diagonal constant."""
    text = json.dumps({"ns": [[str(x) for x in r] for r in bv.ns_gram], "chi": str(bv.chi)})
    return hashlib.sha256(text.encode()).hexdigest()[:16]


class ResultCache:
    def __init__(self, directory):
        self.directory = os.fspath(directory)
        os.makedirs(self.directory, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls):
        d = os.environ.get(ENV_VAR)
        return cls(d) if d else None

    @staticmethod
    def _key_text(key):
        return json.dumps(list(key), separators=(",", ":"))

    def _path(self, key_text):
        return os.path.join(self.directory, hashlib.sha256(key_text.encode()).hexdigest() + ".rec")

    def _read(self, path, key_text):
        try:
            with open(path, encoding="utf-8") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return None
        except OSError as e:
            log.warning("unreadable cache record %s: %s", path, e)
            return None
        head, sep, body = raw.partition("\n---\n")
        lines = head.split("\n")
        if not sep or len(lines) != 4 or not lines[0].startswith(MAGIC + " v"):
            log.warning("corrupt cache record %s ignored", path)
            return None
        try:
            version = int(lines[0][len(MAGIC) + 2:])
        except ValueError:
            log.warning("corrupt cache record %s ignored", path)
            return None
        if version != VERSION:
            log.warning("cache record %s has format version %s, expected %s", path, version, VERSION)
            return None
        if lines[3] != "key: " + key_text:
            return None
        if not body.endswith("\n"):
            log.warning("truncated cache record %s ignored", path)
            return None
        return body[:-1]

    def get(self, key, ring, fingerprint):
        """Stored canonical text for ``key`` or None."""
        key_text = self._key_text(key)
        val = self._read(self._path(key_text), key_text)
        if val is None:
            self.misses += 1
        else:
            self.hits += 1
        return val

    def put(self, key, ring, fingerprint, value):
        key_text = self._key_text(key)
        path = self._path(key_text)
        old = self._read(path, key_text)
        if old is not None:
            if old != value:
                raise CacheIntegrityError(f"cache integrity violation for key {key_text}")
            return
        record = (f"{MAGIC} v{VERSION}\nring: {ring}\nfingerprint: {fingerprint}\n"
                  f"key: {key_text}\n---\n{value}\n")
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".rec")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(record)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    # --- pullback records ------------------------------------------------------
    def _pullback_key(self, n, partition, l, p, bv):
        from .polynomial import to_text
        return ("pullback", n, partition, l, to_text(p), ring_fingerprint(bv))

    def get_pullback(self, n, partition, l, p, bv):
        from .expr import parse
        text = self.get(self._pullback_key(n, partition, l, p, bv), "bv", ring_fingerprint(bv))
        return None if text is None else parse(text, "bv")

    def put_pullback(self, n, partition, l, p, bv, value):
        from .polynomial import to_text
        self.put(self._pullback_key(n, partition, l, p, bv), "bv", ring_fingerprint(bv), to_text(value))

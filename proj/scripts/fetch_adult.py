#!/usr/bin/env python3
"""Rebuild data/adult/adult.tar.gz from the copy of UCI Adult bundled in the
dataprep wheel on PyPI.

The bundled adult.csv concatenates the canonical test split (16,281 rows)
followed by the canonical training split (32,561 rows), with trailing dots
already stripped from the test labels.
"""
import io
import pathlib
import subprocess
import sys
import tarfile
import tempfile
import zipfile

TEST_ROWS = 16281
TRAIN_ROWS = 32561


def main() -> int:
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "adult" / "adult.tar.gz"
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps",
                        "dataprep==0.4.5", "-d", tmp], check=True)
        wheel = next(pathlib.Path(tmp).glob("dataprep-*.whl"))
        raw = zipfile.ZipFile(wheel).read("dataprep/datasets/data/adult.csv").decode()
    lines = raw.splitlines()
    header = lines[0].replace('"', "")
    rows = lines[1:]
    assert len(rows) == TEST_ROWS + TRAIN_ROWS, len(rows)
    files = {
        "adult_train.csv": rows[TEST_ROWS:],
        "adult_test.csv": rows[:TEST_ROWS],
    }
    with tarfile.open(out, "w:gz") as tar:
        for name, body in files.items():
            data = ("\n".join([header] + body) + "\n").encode()
            info = tarfile.TarInfo(name)
            info.size = len(data)
            info.mtime = 0
            tar.addfile(info, io.BytesIO(data))
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

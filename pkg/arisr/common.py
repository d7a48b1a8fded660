#! /usr/bin/env python3

import logging
logger = logging.getLogger(__name__)

from enum import Enum, auto
from hashlib import blake2b
import json
from pathlib import Path

class FixtureStatus(Enum):
    parsed = auto()
    tutte = auto()
    poset = auto()
    ideal = auto()
    hilbert = auto()
    verified = auto() # Oracle dimensions match the closed form
    mismatch = auto()

class ArisrError(ValueError):
    """Base class for all errors raised on invalid mathematical input.
    """

class InputError(ArisrError):
    pass

class InfiniteQuotient(ArisrError):
    pass

class IllDefined(ArisrError):
    pass

class NotAMatroid(ArisrError):
    pass

class EmptyComplex(ArisrError):
    pass

class PartialMultiplicity(ArisrError):
    pass

class NotWeaklyArithmetic(ArisrError):
    pass

class InvalidStructure(ArisrError):
    pass

class NoUpperBound(ArisrError):
    pass

class NonUniqueMeet(ArisrError):
    pass

class NoUniqueMin(ArisrError):
    pass

class NotSimplicial(ArisrError):
    pass

def canonical_json(data) -> str:
    """Return the canonical text form used for all saved JSON.
    """
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

def data_signature(data) -> str:
    """Return a signature (as a string) for the given data.
    """
    h = blake2b(json.dumps(data, sort_keys=True).encode('utf-8'))
    return h.hexdigest()

def save_if_changed(data: dict, output_file: Path) -> bool:
    """Save the data into file if it is different.

    Only the 'data' property is compared.

    Returns True if the data was actually saved.
    """
    updated_content = True
    if output_file.exists():
        old_data = json.loads(output_file.read_text())
        if data_signature(old_data.get('data')) == data_signature(data.get('data')):
            updated_content = False

    if updated_content:
        if not output_file.parent.is_dir():
            output_file.parent.mkdir(parents=True)
        output_file.write_text(canonical_json(data))

    return updated_content

def format_polynomial(poly) -> str:
    """Render a sympy Poly with integer coefficients as text.

    Terms are in descending total degree, with `^` for powers, `*`
    between factors and explicit signs, e.g. "x^2 + 2*x - 1".
    """
    names = [str(g) for g in poly.gens]
    terms = sorted(((m, c) for m, c in poly.terms() if c), key=lambda term: (-sum(term[0]), [-e for e in term[0]]))
    if not terms:
        return "0"
    output = []
    for monom, coeff in terms:
        coeff = int(coeff)
        factors = [ name if e == 1 else f"{name}^{e}"
                    for name, e in zip(names, monom)
                    if e ]
        magnitude = abs(coeff)
        if not factors:
            text = str(magnitude)
        elif magnitude == 1:
            text = "*".join(factors)
        else:
            text = "*".join([str(magnitude)] + factors)
        if not output:
            output.append(text if coeff > 0 else f"-{text}")
        else:
            output.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(output)

class Config:
    def __init__(self, data_dir: Path,
                 output_dir: Path = None):
        data_dir = Path(data_dir)
        if output_dir is not None:
            output_dir = Path(output_dir)
        else:
            output_dir = data_dir / "output"
        self._dir = {
            'data': data_dir,
            'output': output_dir,
            'fixtures': data_dir / "fixtures",
            'reports': output_dir / "reports",
            'dot': output_dir / "dot",
            'ideals': output_dir / "ideals",
        }
        self._suffix = {
            'fixtures': 'json',
            'reports': 'json',
            'dot': 'dot',
            'ideals': 'txt',
        }


    def dir(self, stage: str = 'reports', create: bool = False) -> Path:
        d = self._dir[stage]
        if create and not d.is_dir():
            d.mkdir(parents=True)
        return d


    def file(self, name: str, stage: str = 'reports', create = False) -> Path:
        d = self.dir(stage, create=create)
        if stage == 'fixtures':
            # Fixtures may also be written in YAML
            for suffix in ('json', 'yaml', 'yml'):
                candidate = d / f"{name}.{suffix}"
                if candidate.exists():
                    return candidate
        return d / f"{name}.{self._suffix[stage]}"


    def data(self, name: str, stage: str = 'reports') -> dict:
        filename = self.file(name, stage)
        if filename.exists():
            data = json.loads(filename.read_text())
        else:
            logger.warning(f"No {stage} data for {name}")
            data = {}
        return data


    def save_data(self, data, name: str, stage: str) -> Path:
        """Serialize the given data into the appropriate file.

        JSON stages go through save_if_changed, text stages are
        written as-is. Return the Path of the file.
        """
        logger.debug(f"Saving {name} {stage} data")
        outfile = self.file(name, stage, create=True)
        if self._suffix[stage] == 'json':
            save_if_changed(data, outfile)
        else:
            outfile.write_text(data)
        return outfile


    def fixtures(self, prefix: str = '') -> list:
        """Return the sorted list of fixture names in the fixtures directory.
        """
        d = self.dir('fixtures')
        if not d.is_dir():
            return []
        return sorted(set(f.stem
                          for pattern in ('json', 'yaml', 'yml')
                          for f in d.glob(f'{prefix}*.{pattern}')))


    def status(self, name: str) -> set:
        """Return the status for the given fixture.

        Return set of FixtureStatus flags.
        """
        status = set()
        if self.file(name, 'fixtures').exists():
            status.add(FixtureStatus.parsed)
        if self.file(name, 'dot').exists():
            status.add(FixtureStatus.poset)
        if self.file(name, 'ideals').exists():
            status.add(FixtureStatus.ideal)
        report = self.file(name, 'reports')
        if report.exists():
            data = json.loads(report.read_text()).get('data', {})
            if data.get('tutte'):
                status.add(FixtureStatus.tutte)
            hilbert = data.get('hilbert')
            if hilbert:
                status.add(FixtureStatus.hilbert)
                if hilbert.get('match'):
                    status.add(FixtureStatus.verified)
                else:
                    status.add(FixtureStatus.mismatch)
        return status

//! On-disk cache of prime classifications, one file per polynomial.
//!
//! The file name is the SHA-256 of the coefficient list. The first line
//! repeats the coefficient list, the last line carries a digest of the
//! records in between, and each record is `p verdict [witness]`:
//!
//! ```text
//! # coeffs 1,0,0,0,1
//! 2 divisor 1
//! 3 nondivisor
//! # sha256 4f0c...
//! ```
//!
//! A file whose digest does not match is not trusted: its records are
//! re-derived one by one, and unreadable lines are recomputed with a warning.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use log::warn;
use sha2::{Digest, Sha256};
use twistlab_core::arith::{is_prime_u64, primes_up_to};
use twistlab_core::prime_sieve::{classify, classify_primes, witness_is_valid, PrimeClass, Verdict};
use twistlab_core::IntPoly;

use crate::CliError;

const COEFFS_PREFIX: &str = "# coeffs ";
const DIGEST_PREFIX: &str = "# sha256 ";

#[derive(Debug, Clone)]
pub struct PrimeCache {
    dir: PathBuf,
}

/// What a load found, before recomputation.
#[derive(Debug, Default)]
pub struct LoadReport {
    pub records: BTreeMap<u64, PrimeClass>,
    pub corrupt_lines: usize,
    pub digest_ok: bool,
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn cache_key(poly: &IntPoly) -> String {
    sha256_hex(&poly.to_coeff_list())
}

fn parse_record(line: &str) -> Option<PrimeClass> {
    let mut fields = line.split_whitespace();
    let p: u64 = fields.next()?.parse().ok()?;
    let verdict = match fields.next()? {
        "divisor" => Verdict::Divisor { witness: fields.next()?.parse().ok()? },
        "nondivisor" => Verdict::NonDivisor,
        "excluded" => Verdict::Excluded { reason: fields.next()?.parse().ok()? },
        _ => return None,
    };
    if fields.next().is_some() || !is_prime_u64(p) {
        return None;
    }
    Some(PrimeClass { p, verdict })
}

fn plausible(poly: &IntPoly, class: &PrimeClass) -> bool {
    match class.verdict {
        Verdict::Divisor { witness } => witness < class.p && witness_is_valid(poly, class),
        _ => true,
    }
}

impl PrimeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PrimeCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, poly: &IntPoly) -> PathBuf {
        self.dir.join(format!("{}.primes", cache_key(poly)))
    }

    /// Reads whatever trustworthy records the cache holds for `poly`.
    pub fn load(&self, poly: &IntPoly) -> Result<LoadReport, CliError> {
        let path = self.path_for(poly);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(LoadReport::default()),
            Err(e) => return Err(e.into()),
        };
        let mut lines: Vec<&str> = text.lines().collect();
        let coeffs = poly.to_coeff_list();
        if lines.first().and_then(|l| l.strip_prefix(COEFFS_PREFIX)) != Some(coeffs.as_str()) {
            warn!("{}: header does not match {coeffs}; ignoring the file", path.display());
            return Ok(LoadReport { corrupt_lines: lines.len(), ..LoadReport::default() });
        }
        lines.remove(0);
        let stored_digest = lines.last().and_then(|l| l.strip_prefix(DIGEST_PREFIX)).map(str::to_owned);
        if stored_digest.is_some() {
            lines.pop();
        }
        let body: String = lines.iter().map(|l| format!("{l}\n")).collect();
        let digest_ok = stored_digest.as_deref() == Some(sha256_hex(&body).as_str());
        if !digest_ok {
            warn!("{}: digest mismatch; re-verifying every record", path.display());
        }

        let mut report = LoadReport { digest_ok, ..LoadReport::default() };
        for (i, line) in lines.iter().enumerate() {
            let parsed = parse_record(line).filter(|c| plausible(poly, c));
            let trusted = match parsed {
                Some(class) if digest_ok => Some(class),
                Some(class) => classify(poly, class.p).ok().filter(|fresh| *fresh == class),
                None => None,
            };
            match trusted {
                Some(class) => {
                    report.records.insert(class.p, class);
                }
                None => {
                    warn!("{}: line {} ({line:?}) is corrupt; it will be recomputed", path.display(), i + 2);
                    report.corrupt_lines += 1;
                }
            }
        }
        Ok(report)
    }

    /// Writes all records for `poly`, replacing the previous file.
    pub fn store(&self, poly: &IntPoly, classes: &[PrimeClass]) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir)?;
        let body: String = classes.iter().map(|c| format!("{c}\n")).collect();
        let text = format!("{COEFFS_PREFIX}{}\n{body}{DIGEST_PREFIX}{}\n", poly.to_coeff_list(), sha256_hex(&body));
        let path = self.path_for(poly);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Every prime up to `bound` classified, reusing cached records and
    /// persisting anything newly computed.
    pub fn classify_all(&self, poly: &IntPoly, bound: u64) -> Result<Vec<PrimeClass>, CliError> {
        let mut report = self.load(poly)?;
        let missing: Vec<u64> = primes_up_to(bound).into_iter().filter(|p| !report.records.contains_key(p)).collect();
        let fresh = classify_primes(poly, &missing)?;
        let dirty = !fresh.is_empty() || report.corrupt_lines > 0 || !report.digest_ok;
        for class in fresh {
            report.records.insert(class.p, class);
        }
        let all: Vec<PrimeClass> = report.records.values().copied().collect();
        if dirty {
            self.store(poly, &all)?;
        }
        Ok(all.into_iter().take_while(|c| c.p <= bound).collect())
    }
}

/// Cache directory: explicit flag, then `TWISTLAB_CACHE_DIR`, then the user
/// cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(dir) = flag {
        return Some(dir.to_path_buf());
    }
    if let Some(dir) = std::env::var_os("TWISTLAB_CACHE_DIR").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir).join("twistlab"));
    }
    std::env::var_os("HOME").map(|home| PathBuf::from(home).join(".cache").join("twistlab"))
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Alphabet, MosaicMatrix};

/// Largest target space addressable by a [`TargetCode`].
pub const TARGET_SPACE_LIMIT: u64 = 1 << 63;

/// Number of `k`x`k` targets over `a` letters, `a^(k^2)`, when it fits under
/// [`TARGET_SPACE_LIMIT`].
pub fn target_space(k: usize, a: u32) -> Option<u64> {
    let exp = u32::try_from(k.checked_mul(k)?).ok()?;
    let size = (a as u64).checked_pow(exp)?;
    (size <= TARGET_SPACE_LIMIT).then_some(size)
}

/// Row-major base-`a` index of a `k`x`k` target, most significant letter first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TargetCode {
    pub code: u64,
    pub k: usize,
    pub a: u32,
}

impl TargetCode {
    pub fn new(code: u64, k: usize, a: Alphabet) -> Result<Self> {
        let space = checked_space(k, a)?;
        if code >= space {
            return Err(Error::InvalidArgument(format!(
                "target code {code} out of range for k={k}, a={} (space {space})",
                a.size()
            )));
        }
        Ok(Self {
            code,
            k,
            a: a.size(),
        })
    }
}

fn checked_space(k: usize, a: Alphabet) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("target side must be positive".into()));
    }
    target_space(k, a.size()).ok_or(Error::TargetSpaceTooLarge {
        k,
        a: a.size(),
        limit: "2^63",
    })
}

pub fn encode_target(target: &MosaicMatrix) -> Result<TargetCode> {
    if !target.is_square() {
        return Err(Error::Shape(format!(
            "targets must be square, got {}x{}",
            target.rows(),
            target.cols()
        )));
    }
    let k = target.rows();
    let a = target.alphabet();
    checked_space(k, a)?;
    let base = a.size() as u64;
    let code = target
        .entries()
        .iter()
        .fold(0u64, |acc, &e| acc * base + e as u64);
    Ok(TargetCode {
        code,
        k,
        a: a.size(),
    })
}

pub fn decode_target(code: TargetCode) -> Result<MosaicMatrix> {
    let a = Alphabet::new(code.a)?;
    let checked = TargetCode::new(code.code, code.k, a)?;
    Ok(decode_unchecked(checked.code, checked.k, a))
}

pub(crate) fn decode_unchecked(mut code: u64, k: usize, a: Alphabet) -> MosaicMatrix {
    let base = a.size() as u64;
    let mut entries = vec![0u8; k * k];
    for slot in entries.iter_mut().rev() {
        *slot = (code % base) as u8;
        code /= base;
    }
    MosaicMatrix::from_parts_unchecked(k, k, a, entries)
}

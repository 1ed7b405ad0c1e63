use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::complex::FreeComplex;
use super::map::ModuleMap;
use super::module::{eliminate_pivot, find_unit, PresentedModule};
use super::ring::{QuotientRing, Ring};
use super::syzygy::syzygy;
use crate::error::{Error, Result};

/// A minimal free resolution truncated at `F_max_len`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: FreeComplex,
    /// The minimal resolution continues past `F_max_len`.
    pub truncated: bool,
}

impl Resolution {
    pub fn ranks(&self) -> &[usize] {
        self.complex.ranks()
    }

    /// Projective dimension when the resolution stops within the window.
    pub fn length_if_finite(&self) -> Option<usize> {
        if self.truncated {
            return None;
        }
        Some(self.complex.ranks().iter().rposition(|&r| r > 0).unwrap_or(0))
    }
}

/// Incremental minimal resolution: `done` holds final differentials
/// `d_1..d_k`; `pending` is `d_{k+1}`, free of unit entries but not yet
/// pruned against its own syzygies.
#[derive(Clone, Debug)]
struct Builder {
    f0: usize,
    done: Vec<ModuleMap>,
    pending: Option<ModuleMap>,
}

impl Builder {
    fn start(m: &PresentedModule) -> Builder {
        let min = m.minimal_presentation();
        let d1 = min.presentation().clone();
        let pending = if d1.ncols() > 0 { Some(d1) } else { None };
        Builder { f0: min.ngens(), done: Vec::new(), pending }
    }

    fn finished(&self) -> bool {
        self.pending.is_none()
    }

    fn step(&mut self, ring: &QuotientRing) -> Result<()> {
        let Some(mut cur) = self.pending.take() else { return Ok(()) };
        let mut next = syzygy(ring, &cur)?;
        while let Some((r, c)) = find_unit(&next) {
            next = eliminate_pivot(ring, &next, r, c);
            let keep: Vec<usize> = (0..cur.ncols()).filter(|&j| j != r).collect();
            cur = cur.select_cols(&keep);
        }
        let next = next.prune_columns();
        if cur.ncols() > 0 {
            self.done.push(cur);
            if next.ncols() > 0 {
                self.pending = Some(next);
            }
        }
        Ok(())
    }

    fn resolution(&self, ring: &Ring, max_len: usize) -> Result<Resolution> {
        let mut ranks = vec![self.f0];
        let mut maps = Vec::with_capacity(max_len);
        for i in 0..max_len {
            let map = self.done.get(i).cloned().unwrap_or_else(|| ModuleMap::zero(ranks[i], 0));
            ranks.push(map.ncols());
            maps.push(map);
        }
        let truncated = match self.done.get(max_len) {
            Some(d) => d.ncols() > 0,
            None => self.done.len() == max_len && self.pending.is_some(),
        };
        Ok(Resolution { complex: FreeComplex::new_unchecked(ring.clone(), ranks, maps)?, truncated })
    }
}

fn builders() -> &'static Mutex<HashMap<String, Builder>> {
    static CELL: OnceLock<Mutex<HashMap<String, Builder>>> = OnceLock::new();
    CELL.get_or_init(Default::default)
}

/// Minimal free resolution `F_max_len -> ... -> F_0` of `M`.
///
/// Each step takes syzygies of the previous differential and splits off
/// trivial summands at unit entries, which also drops redundant generators of
/// the previous syzygy module. Partial resolutions are memoized per module and
/// extended on demand, so results do not depend on call order.
pub fn free_resolution(m: &PresentedModule, max_len: usize) -> Result<Resolution> {
    let ring = m.ring();
    let key = m.content_key();
    let mut b = builders().lock().expect("resolution memo").get(&key).cloned().unwrap_or_else(|| Builder::start(m));
    let mut grew = false;
    while b.done.len() < max_len && !b.finished() {
        b.step(ring)?;
        grew = true;
    }
    if grew {
        let mut table = builders().lock().expect("resolution memo");
        let entry = table.entry(key).or_insert_with(|| b.clone());
        if entry.done.len() < b.done.len() {
            *entry = b.clone();
        }
    }
    b.resolution(ring, max_len)
}

/// Homotopy-equivalent complex with every differential entry in `m`.
/// Unit pivots are taken lowest row first, then lowest column.
pub fn minimalize(c: &FreeComplex) -> Result<FreeComplex> {
    let ring = c.ring().clone();
    let mut maps: Vec<ModuleMap> = c.maps().to_vec();
    for i in 0..maps.len() {
        while let Some((r, col)) = find_unit(&maps[i]) {
            maps[i] = eliminate_pivot(&ring, &maps[i], r, col);
            if i > 0 {
                let keep: Vec<usize> = (0..maps[i - 1].ncols()).filter(|&j| j != r).collect();
                maps[i - 1] = maps[i - 1].select_cols(&keep);
            }
            if i + 1 < maps.len() {
                let next = &maps[i + 1];
                let rows: Vec<usize> = (0..next.nrows()).filter(|&j| j != col).collect();
                let cols: Vec<usize> = (0..next.ncols()).collect();
                maps[i + 1] = next.select(&rows, &cols);
            }
        }
    }
    let mut ranks = vec![maps.first().map_or(c.rank(0), |m| m.nrows())];
    ranks.extend(maps.iter().map(|m| m.ncols()));
    FreeComplex::new(ring, ranks, maps)
}

/// Total Betti numbers `beta_0..beta_max_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
}

/// Betti numbers from the minimal resolution, cross-checked against
/// `dim_k Tor_i(k, M)` computed from a resolution of `k`.
pub fn betti(m: &PresentedModule, max_i: usize) -> Result<BettiTable> {
    let res = free_resolution(m, max_i)?;
    let ranks = res.ranks().to_vec();
    let k = PresentedModule::residue_field(m.ring().clone());
    for (i, &r) in ranks.iter().enumerate() {
        let t = super::tor_ext::tor(&k, m, i)?;
        if t.kdim != super::module::Kdim::Finite(r as u64) {
            return Err(Error::Verification(format!(
                "beta_{i} = {r} from the minimal resolution but dim Tor_{i}(k, M) = {}",
                t.kdim
            )));
        }
    }
    Ok(BettiTable { betti: ranks })
}

/// Projective dimension verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "pd", rename_all = "kebab-case")]
pub enum PdVerdict {
    Finite { value: usize },
    /// `beta_witness_degree != 0` with `witness_degree = depth R + 1`.
    Infinite { witness_degree: usize },
    /// `M = 0`.
    ZeroModule,
}

impl PdVerdict {
    pub fn is_finite(self) -> bool {
        !matches!(self, PdVerdict::Infinite { .. })
    }
}

/// Resolves to `depth R + 1`: finite when the resolution stops by `depth R`,
/// infinite when `beta_{depth R + 1} != 0`.
pub fn pd_verdict(m: &PresentedModule) -> Result<PdVerdict> {
    if m.is_zero()? {
        return Ok(PdVerdict::ZeroModule);
    }
    let depth_r = crate::invariants::ring_depth(m.ring())?;
    let res = free_resolution(m, depth_r + 1)?;
    if res.ranks()[depth_r + 1] > 0 {
        return Ok(PdVerdict::Infinite { witness_degree: depth_r + 1 });
    }
    let value = res.ranks().iter().rposition(|&r| r > 0).unwrap_or(0);
    Ok(PdVerdict::Finite { value })
}

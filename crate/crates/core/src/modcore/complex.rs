use super::map::ModuleMap;
use super::module::{Kdim, PresentedModule};
use super::ring::Ring;
use super::syzygy::kernel_modulo;
use crate::error::{Error, Result};

/// A bounded chain complex of free modules `F_L -> ... -> F_1 -> F_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `maps[i]` is the differential `F_{i+1} -> F_i`.
    maps: Vec<ModuleMap>,
}

impl FreeComplex {
    /// Checks shapes and `d_i d_{i+1} = 0` modulo `I`.
    pub fn new(ring: Ring, ranks: Vec<usize>, maps: Vec<ModuleMap>) -> Result<Self> {
        let c = Self::new_unchecked(ring, ranks, maps)?;
        for i in 1..c.maps.len() {
            if !c.maps[i - 1].compose(&c.ring, &c.maps[i])?.is_zero() {
                return Err(Error::Structural(format!("d_{} d_{} is not zero", i, i + 1)));
            }
        }
        Ok(c)
    }

    /// Shape checks only; used where `d^2 = 0` holds by construction.
    pub(crate) fn new_unchecked(ring: Ring, ranks: Vec<usize>, maps: Vec<ModuleMap>) -> Result<Self> {
        if ranks.len() != maps.len() + 1 {
            return Err(Error::Structural(format!("{} ranks for {} differentials", ranks.len(), maps.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.nrows() != ranks[i] || m.ncols() != ranks[i + 1] {
                return Err(Error::Structural(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    m.nrows(),
                    m.ncols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        Ok(FreeComplex { ring, ranks, maps })
    }

    /// Differentials listed from `d_1` upwards; `F_0` has `d_1.nrows()` generators.
    pub fn from_maps(ring: Ring, maps: Vec<ModuleMap>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::Structural("a complex needs at least one differential".into()));
        };
        let mut ranks = vec![first.nrows()];
        ranks.extend(maps.iter().map(|m| m.ncols()));
        Self::new(ring, ranks, maps)
    }

    /// The complex `R^n` concentrated in degree 0.
    pub fn single(ring: Ring, n: usize) -> Self {
        FreeComplex { ring, ranks: vec![n], maps: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Highest degree with a term (possibly of rank zero).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> Option<&ModuleMap> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    pub fn map_differentials(&self, f: impl FnMut(&ModuleMap) -> Result<ModuleMap>) -> Result<FreeComplex> {
        let maps = self.maps.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.ring.clone(), self.ranks.clone(), maps)
    }

    pub fn to_module_complex(&self) -> ModuleComplex {
        ModuleComplex {
            ring: self.ring.clone(),
            terms: self.ranks.iter().map(|&r| PresentedModule::free(self.ring.clone(), r)).collect(),
            maps: self.maps.clone(),
        }
    }

    pub fn homology(&self, i: usize) -> Result<Homology> {
        self.to_module_complex().homology(i)
    }
}

/// A bounded complex `T_L -> ... -> T_0` of presented modules; the maps act
/// on generators.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    ring: Ring,
    terms: Vec<PresentedModule>,
    /// `maps[i] : T_{i+1} -> T_i`.
    maps: Vec<ModuleMap>,
}

impl ModuleComplex {
    /// Checks that every map is well defined on the cokernels and that
    /// consecutive maps compose to zero.
    pub fn new(ring: Ring, terms: Vec<PresentedModule>, maps: Vec<ModuleMap>) -> Result<Self> {
        let c = Self::new_unchecked(ring, terms, maps)?;
        for (i, d) in c.maps.iter().enumerate() {
            let target = c.terms[i].relation_gb()?;
            let image = d.compose(&c.ring, c.terms[i + 1].presentation())?;
            if !image.cols().iter().all(|col| target.contains_col(&c.ring, col)) {
                return Err(Error::Structural(format!("map out of degree {} is not well defined", i + 1)));
            }
            if i > 0 {
                let dd = c.maps[i - 1].compose(&c.ring, d)?;
                let below = c.terms[i - 1].relation_gb()?;
                if !dd.cols().iter().all(|col| below.contains_col(&c.ring, col)) {
                    return Err(Error::Structural(format!("d_{} d_{} is not zero", i, i + 1)));
                }
            }
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(ring: Ring, terms: Vec<PresentedModule>, maps: Vec<ModuleMap>) -> Result<Self> {
        if terms.len() != maps.len() + 1 {
            return Err(Error::Structural(format!("{} terms for {} maps", terms.len(), maps.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.nrows() != terms[i].ngens() || m.ncols() != terms[i + 1].ngens() {
                return Err(Error::Structural(format!("map out of degree {} has the wrong shape", i + 1)));
            }
            if **terms[i].ring() != *ring {
                return Err(Error::Structural("terms over different rings".into()));
            }
        }
        Ok(ModuleComplex { ring, terms, maps })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `H_i = Z / B` where `Z = { v : d_i v in im(rel_{i-1}) }` and
    /// `B = im(d_{i+1}) + im(rel_i)`, presented on the generators of `Z`.
    pub fn homology(&self, i: usize) -> Result<Homology> {
        let ring = &self.ring;
        let Some(term) = self.terms.get(i) else {
            return Ok(Homology { module: PresentedModule::zero(ring.clone()), is_zero: true });
        };
        let cycles = if i == 0 {
            ModuleMap::identity(ring, term.ngens())
        } else {
            kernel_modulo(ring, &self.maps[i - 1], Some(self.terms[i - 1].presentation()))?
        };
        let boundaries = match self.maps.get(i) {
            Some(d) => d.hconcat(term.presentation())?,
            None => term.presentation().clone(),
        };
        let relations = kernel_modulo(ring, &cycles, Some(&boundaries))?;
        let module = PresentedModule::new(ring.clone(), relations).minimal_presentation();
        let is_zero = module.is_zero()?;
        Ok(Homology { module, is_zero })
    }
}

/// A homology module with its vanishing flag.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: PresentedModule,
    pub is_zero: bool,
}

impl Homology {
    pub fn kdim(&self) -> Result<Kdim> {
        if self.is_zero {
            Ok(Kdim::Finite(0))
        } else {
            self.module.kdim()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcore::QuotientRing;

    fn m(ring: &Ring, rows: &[&[&str]]) -> ModuleMap {
        ModuleMap::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|s| ring.parse_element(s).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn koszul_on_variables_is_acyclic() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let c = FreeComplex::from_maps(r.clone(), vec![m(&r, &[&["x", "y"]]), m(&r, &[&["y"], &["x"]])]).unwrap();
        assert!(c.homology(1).unwrap().is_zero);
        assert!(c.homology(2).unwrap().is_zero);
        let h0 = c.homology(0).unwrap();
        assert_eq!(h0.kdim().unwrap(), Kdim::Finite(1));
    }

    #[test]
    fn single_term() {
        let r = QuotientRing::parse(2, &["x"], &[]).unwrap();
        let c = FreeComplex::single(r, 1);
        let h = c.homology(0).unwrap();
        assert!(!h.is_zero);
        assert_eq!(h.kdim().unwrap(), Kdim::Infinite);
        assert!(c.homology(3).unwrap().is_zero);
    }

    #[test]
    fn multiplication_by_x_on_dual_numbers() {
        let r = QuotientRing::parse(2, &["x"], &["x^2"]).unwrap();
        let c = FreeComplex::from_maps(r.clone(), vec![m(&r, &[&["x"]])]).unwrap();
        let h0 = c.homology(0).unwrap();
        assert_eq!(h0.kdim().unwrap(), Kdim::Finite(1));
        let h1 = c.homology(1).unwrap();
        assert!(!h1.is_zero);
        assert_eq!(h1.kdim().unwrap(), Kdim::Finite(1));
    }

    #[test]
    fn nonzero_square_rejected() {
        let r = QuotientRing::parse(2, &["x"], &[]).unwrap();
        let err = FreeComplex::from_maps(r.clone(), vec![m(&r, &[&["x"]]), m(&r, &[&["x"]])]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn module_complex_well_definedness() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let rx = PresentedModule::from_rows(r.clone(), &[&["x"]], 1).unwrap();
        let free = PresentedModule::free(r.clone(), 1);
        // R/(x) --1--> R is not well defined; R --1--> R/(x) is.
        assert!(ModuleComplex::new(r.clone(), vec![free.clone(), rx.clone()], vec![m(&r, &[&["1"]])]).is_err());
        let c = ModuleComplex::new(r.clone(), vec![rx, free], vec![m(&r, &[&["1"]])]).unwrap();
        // H_1 = ker(R -> R/(x)) = (x), H_0 = 0.
        assert!(c.homology(0).unwrap().is_zero);
        assert_eq!(c.homology(1).unwrap().kdim().unwrap(), Kdim::Infinite);
    }
}

use serde::Serialize;

use super::{
    find_diamond, find_n5, locate_diamond_paq, locate_diamond_prime_generated, DiamondKind,
    DiamondWitness, PatternError, PentagonWitness,
};
use crate::lattice::SubgroupLattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum Pattern {
    Diamond(DiamondWitness),
    Pentagon(PentagonWitness),
}

/// A named pattern search over a subgroup lattice.
pub trait PatternDetector: Send + Sync {
    fn name(&self) -> &'static str;

    /// `Ok(None)` when the pattern is absent; errors only from locators whose
    /// preconditions fail or whose construction breaks.
    fn detect(&self, l: &SubgroupLattice) -> Result<Option<Pattern>, PatternError>;
}

struct DiamondFinder {
    name: &'static str,
    kind: DiamondKind,
}

impl PatternDetector for DiamondFinder {
    fn name(&self) -> &'static str {
        self.name
    }

    fn detect(&self, l: &SubgroupLattice) -> Result<Option<Pattern>, PatternError> {
        Ok(find_diamond(l, self.kind).map(Pattern::Diamond))
    }
}

struct PentagonFinder;

impl PatternDetector for PentagonFinder {
    fn name(&self) -> &'static str {
        "n5"
    }

    fn detect(&self, l: &SubgroupLattice) -> Result<Option<Pattern>, PatternError> {
        Ok(find_n5(l).map(Pattern::Pentagon))
    }
}

struct PrimeGeneratedLocator;

impl PatternDetector for PrimeGeneratedLocator {
    fn name(&self) -> &'static str {
        "locate_prime_generated"
    }

    fn detect(&self, l: &SubgroupLattice) -> Result<Option<Pattern>, PatternError> {
        locate_diamond_prime_generated(l.group()).map(|w| Some(Pattern::Diamond(w)))
    }
}

struct PaqLocator;

impl PatternDetector for PaqLocator {
    fn name(&self) -> &'static str {
        "locate_paq"
    }

    fn detect(&self, l: &SubgroupLattice) -> Result<Option<Pattern>, PatternError> {
        locate_diamond_paq(l).map(|w| Some(Pattern::Diamond(w)))
    }
}

/// Detectors addressable by name, in registration order.
pub struct DetectorRegistry {
    detectors: Vec<Box<dyn PatternDetector>>,
}

impl DetectorRegistry {
    pub fn empty() -> Self {
        DetectorRegistry {
            detectors: Vec::new(),
        }
    }

    /// Replaces any detector already registered under the same name.
    pub fn register(&mut self, d: Box<dyn PatternDetector>) {
        self.detectors.retain(|e| e.name() != d.name());
        self.detectors.push(d);
    }

    pub fn get(&self, name: &str) -> Option<&dyn PatternDetector> {
        self.detectors
            .iter()
            .find(|d| d.name() == name)
            .map(|d| d.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.detectors.iter().map(|d| d.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn PatternDetector> {
        self.detectors.iter().map(|d| d.as_ref())
    }
}

impl Default for DetectorRegistry {
    fn default() -> Self {
        let mut r = DetectorRegistry::empty();
        for (name, kind) in [
            ("m3", DiamondKind::M3),
            ("cyclic_diamond", DiamondKind::Cyclic),
            ("cyclic_diamond_strict", DiamondKind::CyclicStrict),
            ("generalized_cyclic_diamond", DiamondKind::Generalized),
        ] {
            r.register(Box::new(DiamondFinder { name, kind }));
        }
        r.register(Box::new(PentagonFinder));
        r.register(Box::new(PrimeGeneratedLocator));
        r.register(Box::new(PaqLocator));
        r
    }
}

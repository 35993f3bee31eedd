//! Permutation groups: exact orders via stabilizer chains, streamed
//! enumeration, and conjugacy class arithmetic.

mod classes;
mod group;

pub use classes::{conjugacy_classes, product_class_sizes, Classes};
pub use group::{ElementStream, EnumBudgetError, PermGroup};

use crate::nat::Nat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("images do not form a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator file malformed: {reason}")]
    BadFile { reason: String },
}

/// A permutation of {0, …, degree−1}, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &im in &images {
            if im as usize >= degree || seen[im as usize] {
                return Err(PermError::NotABijection { degree });
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (p, &im) in self.images.iter().enumerate() {
            images[im as usize] = p as u32;
        }
        Permutation { images }
    }

    /// other⁻¹ · self · other.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (p, &im) in self.images.iter().enumerate() {
            images[other.images[p as usize] as usize] = other.images[im as usize];
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &im)| p as u32 == im)
    }

    pub fn num_fixed(&self) -> usize {
        self.images.iter().enumerate().filter(|(p, &im)| *p as u32 == im).count()
    }

    /// Embeds into degree `total`, acting on points `offset..offset+degree`.
    pub fn shift(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (p, &im) in self.images.iter().enumerate() {
            images[p + offset] = im + offset as u32;
        }
        Permutation { images }
    }
}

/// Conjugacy class sizes of a group, as exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub group_order: Nat,
    /// Ascending; a complete list starts with the identity class of size 1.
    pub sizes: Vec<Nat>,
}

impl ClassData {
    pub fn new(group_order: Nat, mut sizes: Vec<Nat>) -> Self {
        sizes.sort();
        ClassData { group_order, sizes }
    }

    /// Whether the sizes account for every group element.
    pub fn is_complete(&self) -> bool {
        self.sizes.iter().sum::<Nat>() == self.group_order
    }

    /// All sizes except the identity's.
    pub fn nontrivial_sizes(&self) -> &[Nat] {
        &self.sizes[1..]
    }
}

/// Parses the embedded generator format: first record the degree, then one
/// permutation per record as space-separated 0-based images.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut records = crate::data::records(text);
    let degree: usize = records
        .next()
        .ok_or_else(|| PermError::BadFile { reason: "missing degree record".into() })?
        .trim()
        .parse()
        .map_err(|e| PermError::BadFile { reason: format!("bad degree: {e}") })?;
    let mut gens = Vec::new();
    for rec in records {
        let images: Vec<u32> = rec
            .split_whitespace()
            .map(|w| w.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| PermError::BadFile { reason: format!("bad image: {e}") })?;
        if images.len() != degree {
            return Err(PermError::BadFile {
                reason: format!("permutation length {} != degree {degree}", images.len()),
            });
        }
        gens.push(Permutation::from_images(images)?);
    }
    if gens.is_empty() {
        return Err(PermError::BadFile { reason: "no generators".into() });
    }
    Ok((degree, gens))
}

/// The Mathieu group M11 on 11 points, from the embedded generators.
pub fn mathieu11() -> PermGroup {
    let (_, gens) = parse_generator_file(&crate::data::load("m11_deg11.txt")).expect("embedded M11 data");
    PermGroup::from_generators(gens).expect("embedded M11 generators")
}

/// The Janko group J1 on 266 points, from the embedded generators.
pub fn janko1() -> PermGroup {
    let (_, gens) = parse_generator_file(&crate::data::load("j1_deg266.txt")).expect("embedded J1 data");
    PermGroup::from_generators(gens).expect("embedded J1 generators")
}

/// Alt_n on n points (two standard generators).
pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 3, "alternating group needs degree >= 3");
    let mut c3: Vec<u32> = (0..n as u32).collect();
    c3[0] = 1;
    c3[1] = 2;
    c3[2] = 0;
    let mut long: Vec<u32> = (0..n as u32).collect();
    if n % 2 == 1 {
        // n-cycle (0 1 ... n-1)
        for (p, v) in long.iter_mut().enumerate() {
            *v = ((p + 1) % n) as u32;
        }
    } else {
        // (n-1)-cycle on 1..n fixing 0
        for p in 1..n {
            long[p] = (p % (n - 1) + 1) as u32;
        }
    }
    let gens = vec![
        Permutation::from_images(c3).unwrap(),
        Permutation::from_images(long).unwrap(),
    ];
    PermGroup::from_generators(gens).expect("alternating generators")
}

/// Sym_n on n points.
pub fn symmetric(n: usize) -> PermGroup {
    assert!(n >= 2);
    let mut tr: Vec<u32> = (0..n as u32).collect();
    tr.swap(0, 1);
    let cyc: Vec<u32> = (0..n as u32).map(|p| (p + 1) % n as u32).collect();
    let gens = vec![
        Permutation::from_images(tr).unwrap(),
        Permutation::from_images(cyc).unwrap(),
    ];
    PermGroup::from_generators(gens).expect("symmetric generators")
}

//! Finitely generated `O`-modules, presented as cokernels.

use std::fmt;

use crate::lattice;
use crate::scalar::Dvr;
use crate::smith::{smith_normal_form, OMatrix};

/// Length of an `O`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

/// An ideal of `O`: zero or `(p^v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OIdeal {
    Zero,
    Power(u64),
}

/// `O^g / span(columns of presentation)`.
///
/// Equality compares the elementary divisors and free rank only.
#[derive(Clone, Debug)]
pub struct FinOModule {
    presentation: OMatrix,
    torsion: Vec<u64>,
    free_rank: usize,
}

impl PartialEq for FinOModule {
    fn eq(&self, other: &Self) -> bool {
        self.torsion == other.torsion && self.free_rank == other.free_rank
    }
}

impl Eq for FinOModule {}

/// The split `0 -> tors M -> M -> tfree M -> 0`, in the basis chosen by the
/// Smith form of the presentation. The splitting is not canonical.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub tors: FinOModule,
    pub tfree: FinOModule,
    /// `g x free_rank`: images in `O^g` of the standard basis of `tfree`.
    pub section: OMatrix,
    /// `free_rank x g`: the projection `O^g -> tfree`.
    pub projection: OMatrix,
}

impl FinOModule {
    /// `presentation` is `g x k`: generators index rows, relations are columns.
    pub fn from_presentation(o: &Dvr, presentation: OMatrix) -> Self {
        let g = presentation.rows();
        let f = smith_normal_form(o, &presentation);
        let torsion: Vec<u64> = f.divisors.iter().copied().filter(|&d| d > 0).collect();
        FinOModule { presentation, torsion, free_rank: g - f.rank() }
    }

    pub fn free(rank: usize) -> Self {
        FinOModule { presentation: OMatrix::zeros(rank, 0), torsion: vec![], free_rank: rank }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `O / p^k`.
    pub fn cyclic(o: &Dvr, k: u64) -> Self {
        Self::from_presentation(o, OMatrix::from_rows(vec![vec![o.uniformizer_pow(k)]]))
    }

    /// `span(z) / span(w)` for a lattice basis `z` and `w ⊆ span(z)`.
    pub fn lattice_quotient(o: &Dvr, z: &OMatrix, w: &OMatrix) -> crate::Result<Self> {
        let c = lattice::relative_coordinates(o, z, w)?;
        Ok(Self::from_presentation(o, c))
    }

    pub fn direct_sum(&self, o: &Dvr, other: &Self) -> Self {
        Self::from_presentation(o, self.presentation.block_diag(&other.presentation))
    }

    pub fn presentation(&self) -> &OMatrix {
        &self.presentation
    }

    pub fn generators(&self) -> usize {
        self.presentation.rows()
    }

    /// Nonzero valuations of the elementary divisors, nondecreasing.
    pub fn torsion_divisors(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn length(&self) -> Length {
        if self.free_rank > 0 {
            Length::Infinite
        } else {
            Length::Finite(self.torsion.iter().sum())
        }
    }

    pub fn torsion_length(&self) -> u64 {
        self.torsion.iter().sum()
    }

    /// `Fitt_i`: generated by the `(g-i)`-minors of the presentation.
    pub fn fitting_ideal(&self, i: usize) -> OIdeal {
        let g = self.generators();
        if i >= g {
            return OIdeal::Power(0);
        }
        let need = g - i;
        let rank = g - self.free_rank;
        if need > rank {
            return OIdeal::Zero;
        }
        // unit divisors sit in front of the torsion ones
        let units = rank - self.torsion.len();
        let from_torsion = need.saturating_sub(units);
        OIdeal::Power(self.torsion[..from_torsion].iter().sum())
    }

    pub fn tors_tfree(&self, o: &Dvr) -> TorsionSplit {
        let g = self.generators();
        let f = smith_normal_form(o, &self.presentation);
        let r = f.rank();
        let tors_exps: Vec<u64> = f.divisors.iter().copied().filter(|&d| d > 0).collect();
        let mut pres = OMatrix::zeros(tors_exps.len(), tors_exps.len());
        for (i, d) in tors_exps.iter().enumerate() {
            pres[(i, i)] = o.uniformizer_pow(*d);
        }
        let free_idx: Vec<usize> = (r..g).collect();
        TorsionSplit {
            tors: Self::from_presentation(o, pres),
            tfree: Self::free(g - r),
            section: f.u_inv.select_cols(&free_idx),
            projection: f.u.select_rows(&free_idx),
        }
    }
}

impl fmt::Display for FinOModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("O/p^{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("O^{}", self.free_rank));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

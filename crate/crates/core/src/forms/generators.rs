use crate::error::{parameter, GeometryError, Result};
use crate::galois::Gf2Vector;
use crate::projgeom::{Gf2Subspace, Subspace};

use super::{classify_quadric, QuadraticForm, QuadricKind};

/// Node limit for the backtracking search.
const SEARCH_BUDGET: u64 = 5_000_000;

/// Largest vector dimension accepted by [`enumerate_generators`].
pub const GENERATOR_MAX_DIM: usize = 8;

/// Depth-first search over reduced echelon bases. Each subspace whose basis
/// vectors are `admissible` and pairwise `perp` is visited exactly once, since
/// rows are appended in pivot order and the echelon basis is unique.
struct Search<'a, A, P> {
    dim: usize,
    admissible: &'a A,
    perp: &'a P,
    rows: Vec<u32>,
    pivots: u32,
    nodes: u64,
    found: Vec<Vec<u32>>,
}

impl<A, P> Search<'_, A, P>
where
    A: Fn(u32) -> bool,
    P: Fn(u32, u32) -> bool,
{
    fn fits(&self, x: u32) -> bool {
        (self.admissible)(x) && (self.perp)(x, x) && self.rows.iter().all(|&r| (self.perp)(r, x))
    }

    fn in_span(&self, x: u32) -> bool {
        let reduced = self.rows.iter().fold(x, |acc, &r| {
            let pivot = r.trailing_zeros();
            if (acc >> pivot) & 1 == 1 {
                acc ^ r
            } else {
                acc
            }
        });
        reduced == 0
    }

    fn is_maximal(&self) -> bool {
        !(1u32..1 << self.dim).any(|x| !self.in_span(x) && self.fits(x))
    }

    fn visit(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(GeometryError::Budget { requested: self.nodes as u128, limit: SEARCH_BUDGET as u128 });
        }
        if self.is_maximal() {
            self.found.push(self.rows.clone());
            return Ok(());
        }
        let start = self.rows.last().map_or(0, |r| r.trailing_zeros() as usize + 1);
        let full = if self.dim == 32 { u32::MAX } else { (1u32 << self.dim) - 1 };
        for c in start..self.dim {
            if self.rows.iter().any(|&r| (r >> c) & 1 == 1) {
                continue;
            }
            let lead = 1u32 << c;
            let free = full & !((lead << 1) - 1) & !self.pivots;
            let mut tail = 0u32;
            loop {
                let x = lead | tail;
                if self.fits(x) {
                    self.rows.push(x);
                    self.pivots |= lead;
                    self.visit()?;
                    self.pivots &= !lead;
                    self.rows.pop();
                }
                if tail == free {
                    break;
                }
                tail = tail.wrapping_sub(free) & free;
            }
        }
        Ok(())
    }
}

/// All maximal subspaces of GF(2)^dim spanned by pairwise `perp` vectors
/// that are `admissible` together with every vector they span. Callers must
/// pass predicates for which admissibility of a basis plus pairwise
/// orthogonality implies admissibility of the span (true for totally
/// singular and totally isotropic subspaces).
pub fn maximal_isotropic_subspaces(
    dim: usize,
    admissible: impl Fn(u32) -> bool,
    perp: impl Fn(u32, u32) -> bool,
) -> Result<Vec<Gf2Subspace>> {
    if dim == 0 || dim > 16 {
        return Err(parameter(format!("search dimension {dim} out of range 1..=16")));
    }
    let mut search =
        Search { dim, admissible: &admissible, perp: &perp, rows: Vec::new(), pivots: 0, nodes: 0, found: Vec::new() };
    search.visit()?;
    let mut out = search
        .found
        .into_iter()
        .map(|rows| {
            let vs: Vec<Gf2Vector> = rows.into_iter().map(|r| Gf2Vector::from_raw(dim, r)).collect();
            Subspace::span(dim, &vs)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// All maximal totally singular subspaces of a nondegenerate quadric.
pub fn enumerate_generators(q: &QuadraticForm) -> Result<Vec<Gf2Subspace>> {
    if q.dim() > GENERATOR_MAX_DIM {
        return Err(parameter(format!("generator search supports dimension <= {GENERATOR_MAX_DIM}, got {}", q.dim())));
    }
    if classify_quadric(q)? == QuadricKind::Degenerate {
        return Err(parameter("generators of a degenerate quadric are not supported"));
    }
    let b = q.polar();
    maximal_isotropic_subspaces(q.dim(), |x| !q.eval_bits(x), |x, y| !b.eval_bits(x, y))
}

/// `G ~ H` iff `dim(G n H) = dim(G) (mod 2)`, with vector dimensions.
pub fn same_family(g: &Gf2Subspace, h: &Gf2Subspace) -> Result<bool> {
    Ok(g.intersection(h)?.rank() % 2 == g.rank() % 2)
}

/// Splits the generators of a hyperbolic quadric into its two families.
///
/// The relation is checked on every pair against the proposed two-class
/// partition, which certifies it is an equivalence with exactly two classes.
pub fn generator_families(gens: &[Gf2Subspace]) -> Result<(Vec<Gf2Subspace>, Vec<Gf2Subspace>)> {
    let Some(first) = gens.first() else {
        return Err(GeometryError::Structure("no generators given".into()));
    };
    let class: Vec<bool> = gens.iter().map(|h| same_family(first, h)).collect::<Result<_>>()?;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if same_family(&gens[i], &gens[j])? != (class[i] == class[j]) {
                return Err(GeometryError::Structure(format!(
                    "intersection parity is not an equivalence on generators {i} and {j}"
                )));
            }
        }
    }
    let (a, b): (Vec<_>, Vec<_>) = gens.iter().zip(&class).partition(|(_, &c)| c);
    if b.is_empty() {
        return Err(GeometryError::Structure("intersection parity gives a single class".into()));
    }
    Ok((a.into_iter().map(|(g, _)| g.clone()).collect(), b.into_iter().map(|(g, _)| g.clone()).collect()))
}

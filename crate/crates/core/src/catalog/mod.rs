//! Concrete hypergroups: duals of SU(2) and SU(3), multivariable Chebyshev,
//! conjugacy classes of finite groups, finite products, and cache
//! persistence.

mod cache;
mod chebyshev;
mod conjugacy;
mod group;
mod product;
mod su2;
mod su3;

pub use cache::{cache_load, cache_store, descriptor_hash, CacheRecord, StructureCache, CACHE_FORMAT_VERSION};
pub use chebyshev::{build_chebyshev, Chebyshev};
pub use conjugacy::{build_conjugacy, ConjugacyHypergroup};
pub use group::{generate_group, load_group_spec, FiniteGroup, GroupSpec, DEFAULT_ORDER_CAP};
pub use product::{build_product, ProductHypergroup};
pub use product::split_top_level;
pub use su2::{build_su2_dual, su2_dimension, su2_tensor_decompose, Su2Dual};
pub use su3::{build_su3_dual, su3_dimension, su3_tensor_decompose, Su3Dual, Weight};

use crate::hypercore::{Element, Measure};
use crate::rational::Rational;

/// Dual-of-compact-group convolution: `Σ m_i d_i / (d_1 d_2) δ_{π_i}` from
/// `(irrep, multiplicity, dimension)` triples.
pub(crate) fn dual_measure<I>(terms: I, d1: u64, d2: u64) -> Measure
where
    I: IntoIterator<Item = (Element, u64, u64)>,
{
    let denom = Rational::from_u64(d1 * d2);
    Measure::from_terms(terms.into_iter().map(|(x, m, d)| (x, &Rational::from_u64(m * d) / &denom)))
}

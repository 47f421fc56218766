//! Exact computations on left-compressed intersecting families of `r`-sets:
//! enumeration of the maximal ones through their generating sets, counting of
//! members that meet a fixed set `X`, and classification of the sets `X` for
//! which no such family beats the star at 1.

pub mod catalog;
pub mod census;
pub mod cli;
pub mod error;
pub mod family;
pub mod goodness;
pub mod mlcif;
pub mod setcore;
pub mod verify;

pub use catalog::CatalogStore;
pub use census::{CountPoly, CountVector, SignClass, XSet};
pub use error::{CatalogError, Error, Result};
pub use family::Family;
pub use goodness::{Classifier, EventualVerdict, Verdict};
pub use mlcif::{Catalog, CatalogEntry, GenAntichain};
pub use setcore::{Generator, Params, RSet};

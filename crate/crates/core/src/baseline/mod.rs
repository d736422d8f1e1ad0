//! Comparison augmenters: EDA and embedding-neighbor replacement.
//!
//! Both touch the target side only and emit exactly one synthetic pair per
//! input pair.

mod eda;
mod embed;

pub use eda::{eda_augment, eda_pair, load_thesaurus, parse_thesaurus, EdaOp, EdaSpec, Thesaurus};
pub use embed::{embed_replace, embed_replace_pair, EmbedReplaceSpec, NeighborCache};

//! Information-preserving transduction between closely related languages.
//!
//! Text is tokenized, analyzed into stem + suffix readings, chunked into
//! word groups and mapped group by group into a compact output notation
//! that keeps every reading the resources allow. Because the resources are
//! checked to be injective, output can always be inverted back to the
//! source text.
//!
//! ```
//! use anusaaraka::{bundled, Engine};
//!
//! let engine = Engine::new(bundled::resources("kan-hin").unwrap()).unwrap();
//! let out = engine.transduce("mohana nALe baruvanu eMdu rAma heLidanu .").output;
//! assert_eq!(out, "mohana kala AyegA EsA rAma kahA .");
//! assert_eq!(engine.invert(&out).unwrap(), "mohana nALe baruvanu eMdu rAma heLidanu .");
//! ```

pub mod analyzer;
pub mod batch;
pub mod bundled;
pub mod cli;
pub mod corpus;
pub mod grouper;
pub mod inverter;
pub mod mapper;
pub mod notation;
pub mod pipeline;
pub mod resources;

pub use batch::Execution;
pub use corpus::GoldCorpus;
pub use notation::{parse_unit, render_unit, OutputUnit};
pub use pipeline::{transduce, Engine, Transduction};
pub use resources::ResourceSet;

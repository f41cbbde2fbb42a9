pub mod coherence_map;
pub mod gen;
pub mod husimi_fit;
pub mod simulate;

pub use coherence_map::{cmd_coherence_map, MapOptions};
pub use gen::{cmd_gen, GenOptions};
pub use husimi_fit::{cmd_husimi_fit, HusimiFitOptions};
pub use simulate::{cmd_simulate, SimulateOptions};

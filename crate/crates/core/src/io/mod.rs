pub mod netpbm;
pub mod series_csv;
pub mod wav;

pub use netpbm::{load_image, write_pgm, write_ppm};
pub use series_csv::load_series_csv;
pub use wav::{load_wav, write_wav};

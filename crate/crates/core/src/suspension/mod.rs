//! The suspension of the binary odometer: exact points, the flow, chart-wise
//! elements, displacement cocycles and the orbit representations `ρ_y`.

pub mod cantor;
pub mod element;
pub mod rho;

pub use cantor::CantorPoint;
pub use element::{
    element_f, f_infinity, thompson_generators_on_j, thompson_interval, tower_interval, Chart, ChartElement,
    SuspensionPoint,
};
pub use rho::{
    chart_trace, default_words, recurrence_distance, recurrence_experiment, rho, RecurrenceReport, RecurrenceRow,
    TraceRow,
};

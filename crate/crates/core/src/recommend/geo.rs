use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Real;

pub const EARTH_RADIUS_KM: f64 = 6371.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("coordinates ({lat}, {lng}) are out of range")]
pub struct GeoError {
    pub lat: f64,
    pub lng: f64,
}

/// Latitude and longitude in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatLng<T> {
    pub lat: T,
    pub lng: T,
}

impl<T: Real> LatLng<T> {
    pub fn new(lat: T, lng: T) -> Result<Self, GeoError> {
        let p = LatLng { lat, lng };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<(), GeoError> {
        let ok = self.lat.abs() <= T::lit(90.0) && self.lng.abs() <= T::lit(180.0);
        if ok {
            Ok(())
        } else {
            Err(GeoError { lat: self.lat.to_f64().unwrap_or(f64::NAN), lng: self.lng.to_f64().unwrap_or(f64::NAN) })
        }
    }

    /// Parses the stored `"lat,lng"` form.
    pub fn parse(text: &str) -> Option<Self> {
        let (lat, lng) = text.split_once(',')?;
        let (lat, lng): (f64, f64) = (lat.trim().parse().ok()?, lng.trim().parse().ok()?);
        LatLng::new(T::from_f64(lat)?, T::from_f64(lng)?).ok()
    }
}

/// Great-circle distance in kilometres.
pub fn haversine_km<T: Real>(a: LatLng<T>, b: LatLng<T>) -> Result<T, GeoError> {
    a.check()?;
    b.check()?;
    let half = T::lit(0.5);
    let (phi1, phi2) = (a.lat.to_radians(), b.lat.to_radians());
    let dphi = (b.lat - a.lat).to_radians();
    let dlambda = (b.lng - a.lng).to_radians();
    let h = (dphi * half).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda * half).sin().powi(2);
    let h = h.max(T::zero()).min(T::one());
    Ok(T::lit(2.0 * EARTH_RADIUS_KM) * h.sqrt().asin())
}

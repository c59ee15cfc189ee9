# -*- coding: utf-8 -*-
from calibration.device import DeviceConstraints, load_device_profile
from calibration.tables import (
    CalibrationError,
    CalibrationTable,
    interp,
    load_calibration,
    load_vendor_schedule,
    resolve_calibration,
    save_calibration,
    synthetic_linear,
)

__all__ = [
    "CalibrationError",
    "CalibrationTable",
    "DeviceConstraints",
    "interp",
    "load_calibration",
    "load_device_profile",
    "load_vendor_schedule",
    "resolve_calibration",
    "save_calibration",
    "synthetic_linear",
]

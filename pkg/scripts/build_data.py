#!/usr/bin/env python3
"""Regenerate the packaged data: catalog, cases, corpus, tables, cassettes, snapshot.

Run from the repo root after an editable install:
    python scripts/build_data.py
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from kg2data import resources
from kg2data.catalog import Catalog, load_catalog, spec_from_dict, validate_request, write_catalog
from kg2data.evaluation.cases import (
    InstructionCase,
    case_to_dict,
    instruction_mentions_tool,
    load_cases,
    save_cases,
)
from kg2data.tools import ToolRegistry

DATA = resources.DATA_ROOT


# --------------------------------------------------------------------------
# catalog: 35 virtual APIs
# --------------------------------------------------------------------------

def p(name, kind, required=True, **kw):
    return {"name": name, "kind": kind, "required": required, **kw}


def f(name, kind, **kw):
    return {"name": name, "kind": kind, **kw}


STATION = p("station", "string")
DATE = p("date", "date")
HOUR = p("hour", "integer", range=[0, 23])
MONTH = p("month", "string")

API_DEFS = [
    # temperature
    {
        "name": "get_hourly_temperature",
        "category": "temperature",
        "description": "Hourly air temperature readings for one station and day, with the daily mean.",
        "params": [STATION, DATE],
        "output_fields": [
            f("readings_c", "series", units="°C", range=[-40, 45], element_kind="number", max_length=24),
            f("daily_mean_c", "number", units="°C", range=[-40, 45]),
        ],
    },
    {
        "name": "get_daily_temperature_range",
        "category": "temperature",
        "description": "Daily minimum and maximum air temperature for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [
            f("min_c", "number", units="°C", range=[-60, 40]),
            f("max_c", "number", units="°C", range=[-40, 55]),
        ],
    },
    {
        "name": "get_monthly_mean_temperature",
        "category": "temperature",
        "description": "Mean air temperature for one station over a calendar month.",
        "params": [STATION, MONTH],
        "output_fields": [f("mean_c", "number", units="°C", range=[-40, 45])],
    },
    {
        "name": "get_soil_temperature",
        "category": "temperature",
        "description": "Soil temperature at a requested depth for one station and day.",
        "params": [STATION, DATE, p("depth_cm", "integer", range=[0, 200])],
        "output_fields": [f("soil_temp_c", "number", units="°C", range=[-20, 40])],
    },
    {
        "name": "get_heat_index",
        "category": "temperature",
        "description": "Apparent-temperature heat index for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [
            f("heat_index_c", "number", units="°C", range=[10, 60]),
            f("caution_advised", "boolean"),
        ],
    },
    # humidity
    {
        "name": "get_relative_humidity",
        "category": "humidity",
        "description": "Relative humidity for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("relative_humidity_pct", "number", units="%", range=[0, 100])],
    },
    {
        "name": "get_dew_point",
        "category": "humidity",
        "description": "Dew point temperature for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("dew_point_c", "number", units="°C", range=[-40, 35])],
    },
    {
        "name": "get_daily_humidity_profile",
        "category": "humidity",
        "description": "24-hour relative humidity profile for one station and day, with the daily mean.",
        "params": [STATION, DATE],
        "output_fields": [
            f("humidity_series", "series", units="%", range=[0, 100], element_kind="number", max_length=24),
            f("daily_mean_pct", "number", units="%", range=[0, 100]),
        ],
    },
    {
        "name": "get_vapor_pressure_deficit",
        "category": "humidity",
        "description": "Daily vapor pressure deficit for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("vpd_kpa", "number", units="kPa", range=[0, 10])],
    },
    # precipitation
    {
        "name": "get_hourly_precipitation",
        "category": "precipitation",
        "description": "Hourly precipitation totals for one station and day, with the daily total.",
        "params": [STATION, DATE],
        "output_fields": [
            f("totals_mm", "series", units="mm", range=[0, 80], element_kind="number", max_length=24),
            f("daily_total_mm", "number", units="mm", range=[0, 500]),
        ],
    },
    {
        "name": "get_daily_precipitation",
        "category": "precipitation",
        "description": "Daily precipitation total and count of wet hours for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [
            f("total_mm", "number", units="mm", range=[0, 500]),
            f("wet_hours", "integer", range=[0, 24]),
        ],
    },
    {
        "name": "get_monthly_precipitation_total",
        "category": "precipitation",
        "description": "Total precipitation for one station over a calendar month.",
        "params": [STATION, MONTH],
        "output_fields": [f("total_mm", "number", units="mm", range=[0, 1200])],
    },
    {
        "name": "get_precipitation_type",
        "category": "precipitation",
        "description": "Dominant precipitation type observed at one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("ptype", "string")],
    },
    {
        "name": "get_snow_depth",
        "category": "precipitation",
        "description": "Snow depth on the ground for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("depth_cm", "number", units="cm", range=[0, 300])],
    },
    {
        "name": "get_rain_gauge_status",
        "category": "precipitation",
        "description": "Operational status and last calibration date of a station's rain gauge.",
        "params": [STATION],
        "output_fields": [f("operational", "boolean"), f("last_calibration", "date")],
    },
    # wind_speed
    {
        "name": "get_hourly_wind_speed",
        "category": "wind_speed",
        "description": "Hourly wind speeds for one station and day, with the daily mean.",
        "params": [STATION, DATE],
        "output_fields": [
            f("speeds_ms", "series", units="m/s", range=[0, 60], element_kind="number", max_length=24),
            f("daily_mean_ms", "number", units="m/s", range=[0, 60]),
        ],
    },
    {
        "name": "get_daily_max_gust",
        "category": "wind_speed",
        "description": "Strongest wind gust of the day and the hour it occurred, for one station.",
        "params": [STATION, DATE],
        "output_fields": [
            f("gust_ms", "number", units="m/s", range=[0, 90]),
            f("gust_hour", "integer", range=[0, 23]),
        ],
    },
    {
        "name": "get_wind_speed_profile",
        "category": "wind_speed",
        "description": "Wind speed at a requested pressure level above one station and day.",
        "params": [STATION, DATE, p("level", "enum", allowed_values=["surface", "850hPa", "500hPa"])],
        "output_fields": [f("speed_ms", "number", units="m/s", range=[0, 120])],
    },
    {
        "name": "get_turbulence_intensity",
        "category": "wind_speed",
        "description": "Turbulence intensity of the near-surface airflow for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("intensity_pct", "number", units="%", range=[0, 100])],
    },
    # wind_direction
    {
        "name": "get_hourly_wind_direction",
        "category": "wind_direction",
        "description": "Hourly wind directions for one station and day, with the prevailing direction.",
        "params": [STATION, DATE],
        "output_fields": [
            f("directions_deg", "series", units="deg", range=[0, 360], element_kind="number", max_length=24),
            f("prevailing_deg", "number", units="deg", range=[0, 360]),
        ],
    },
    {
        "name": "get_prevailing_wind_direction",
        "category": "wind_direction",
        "description": "Prevailing wind direction for one station over a calendar month.",
        "params": [STATION, MONTH],
        "output_fields": [
            f("direction_deg", "number", units="deg", range=[0, 360]),
            f("cardinal", "string"),
        ],
    },
    {
        "name": "get_wind_rose_distribution",
        "category": "wind_direction",
        "description": "16-sector wind rose frequency distribution for one station over a month.",
        "params": [STATION, MONTH],
        "output_fields": [
            f("sector_counts", "series", range=[0, 1000], element_kind="integer", max_length=16)
        ],
    },
    # pressure
    {
        "name": "get_surface_pressure",
        "category": "pressure",
        "description": "Station-level air pressure for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("pressure_hpa", "number", units="hPa", range=[870, 1085])],
    },
    {
        "name": "get_sea_level_pressure",
        "category": "pressure",
        "description": "Mean sea level pressure for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("mslp_hpa", "number", units="hPa", range=[870, 1085])],
    },
    {
        "name": "get_pressure_tendency",
        "category": "pressure",
        "description": "Three-hour pressure tendency and its characteristic for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [
            f("tendency_hpa_3h", "number", units="hPa", range=[-15, 15]),
            f("characteristic", "string"),
        ],
    },
    {
        "name": "get_geopotential_height",
        "category": "pressure",
        "description": "Geopotential height of a requested pressure surface above one station and day.",
        "params": [STATION, DATE, p("level", "enum", allowed_values=["850hPa", "500hPa", "300hPa"])],
        "output_fields": [f("height_m", "number", units="m", range=[1000, 10000])],
    },
    # radiation
    {
        "name": "get_global_solar_radiation",
        "category": "radiation",
        "description": "Hourly global solar radiation for one station and day, with the daily total.",
        "params": [STATION, DATE],
        "output_fields": [
            f("irradiance_wm2", "series", units="W/m2", range=[0, 1200], element_kind="number", max_length=24),
            f("daily_total_mj", "number", units="MJ/m2", range=[0, 45]),
        ],
    },
    {
        "name": "get_uv_index",
        "category": "radiation",
        "description": "UV index for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("uv_index", "number", range=[0, 14])],
    },
    {
        "name": "get_net_longwave_radiation",
        "category": "radiation",
        "description": "Daily net longwave radiation for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("net_lw_wm2", "number", units="W/m2", range=[-150, 100])],
    },
    {
        "name": "get_sunshine_duration",
        "category": "radiation",
        "description": "Sunshine duration in hours for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("sunshine_hours", "number", units="h", range=[0, 16])],
    },
    # other
    {
        "name": "get_visibility",
        "category": "other",
        "description": "Horizontal visibility for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("visibility_km", "number", units="km", range=[0, 80])],
    },
    {
        "name": "get_cloud_cover",
        "category": "other",
        "description": "Cloud cover in oktas for one station, day, and hour.",
        "params": [STATION, DATE, HOUR],
        "output_fields": [f("cover_oktas", "integer", range=[0, 8])],
    },
    {
        "name": "get_evapotranspiration",
        "category": "other",
        "description": "Reference evapotranspiration for one station and day.",
        "params": [STATION, DATE],
        "output_fields": [f("et0_mm", "number", units="mm", range=[0, 20])],
    },
    {
        "name": "get_lightning_strike_count",
        "category": "other",
        "description": "Count of lightning strikes within a radius of one station on one day.",
        "params": [STATION, DATE, p("radius_km", "number", range=[1, 200])],
        "output_fields": [f("strikes", "integer", range=[0, 5000])],
    },
    {
        "name": "get_station_metadata",
        "category": "other",
        "description": "Latitude, longitude, and elevation of one observing station.",
        "params": [STATION],
        "output_fields": [
            f("latitude", "number", units="deg", range=[-90, 90]),
            f("longitude", "number", units="deg", range=[-180, 180]),
            f("elevation_m", "number", units="m", range=[-430, 8850]),
        ],
    },
]


# --------------------------------------------------------------------------
# 70 instruction-answer cases (explicit + implicit per API)
# --------------------------------------------------------------------------

def case(tool, style, instruction, params, tags, fields):
    return {
        "id": f"{tool}_{style}",
        "instruction": instruction,
        "style": style,
        "gold_tool": tool,
        "gold_params": params,
        "intent_tags": tags,
        "answer_fields": fields,
    }


CASE_DEFS = [
    case("get_hourly_temperature", "explicit",
         "What were the hour-by-hour air temperature readings at station K12 on 2024-06-03, and what was the day's average?",
         {"station": "K12", "date": "2024-06-03"}, ["temperature", "hourly"], ["daily_mean_c"]),
    case("get_hourly_temperature", "implicit",
         "Can you pull how warm it ran at site K12 across 2024-06-03, hour by hour, and give me the day's mean?",
         {"station": "K12", "date": "2024-06-03"}, ["temperature", "warm"], ["daily_mean_c"]),
    case("get_daily_temperature_range", "explicit",
         "Report the minimum and maximum air temperature recorded at station M07 on 2024-01-15.",
         {"station": "M07", "date": "2024-01-15"}, ["temperature", "minimum", "maximum"], ["min_c", "max_c"]),
    case("get_daily_temperature_range", "implicit",
         "How sharp was the diurnal swing at M07 on 2024-01-15 — the coldest and hottest marks of the day, please.",
         {"station": "M07", "date": "2024-01-15"}, ["temperature", "range"], ["min_c", "max_c"]),
    case("get_monthly_mean_temperature", "explicit",
         "What was the mean air temperature at station R33 over the month 2024-07?",
         {"station": "R33", "month": "2024-07"}, ["temperature", "monthly", "mean"], ["mean_c"]),
    case("get_monthly_mean_temperature", "implicit",
         "Looking at the 2024-07 ledger for R33: where did the month's warmth settle on average?",
         {"station": "R33", "month": "2024-07"}, ["temperature", "monthly"], ["mean_c"]),
    case("get_soil_temperature", "explicit",
         "What was the soil temperature at 50 cm depth at station T58 on 2024-04-22?",
         {"station": "T58", "date": "2024-04-22", "depth_cm": 50}, ["soil", "temperature", "depth"], ["soil_temp_c"]),
    case("get_soil_temperature", "implicit",
         "Agronomy wants to drill at T58 — check the seedbed warmth 50 cm down for 2024-04-22.",
         {"station": "T58", "date": "2024-04-22", "depth_cm": 50}, ["soil", "temperature"], ["soil_temp_c"]),
    case("get_heat_index", "explicit",
         "What did the heat index reach at station W09 at hour 14 on 2024-08-02, and was caution advised?",
         {"station": "W09", "date": "2024-08-02", "hour": 14}, ["heat index", "caution"], ["heat_index_c", "caution_advised"]),
    case("get_heat_index", "implicit",
         "Field crews at W09 reported sweltering conditions around hour 14 on 2024-08-02 — how punishing did it actually feel?",
         {"station": "W09", "date": "2024-08-02", "hour": 14}, ["heat index", "apparent"], ["heat_index_c"]),
    case("get_relative_humidity", "explicit",
         "What was the relative humidity at station A41 at hour 6 on 2024-03-19?",
         {"station": "A41", "date": "2024-03-19", "hour": 6}, ["humidity", "relative"], ["relative_humidity_pct"]),
    case("get_relative_humidity", "implicit",
         "The hour-6 fog drill at A41 on 2024-03-19 needs context: how close to saturation was the air?",
         {"station": "A41", "date": "2024-03-19", "hour": 6}, ["humidity", "saturation"], ["relative_humidity_pct"]),
    case("get_dew_point", "explicit",
         "Report the dew point at station S77 on 2024-05-20.",
         {"station": "S77", "date": "2024-05-20"}, ["dew point", "moisture"], ["dew_point_c"]),
    case("get_dew_point", "implicit",
         "Overnight condensation risk at S77 for 2024-05-20: at what mark would moisture start beading on the vines?",
         {"station": "S77", "date": "2024-05-20"}, ["dew point", "condensation"], ["dew_point_c"]),
    case("get_daily_humidity_profile", "explicit",
         "Give the 24-hour relative humidity profile at station G20 on 2024-09-09 along with the daily mean.",
         {"station": "G20", "date": "2024-09-09"}, ["humidity", "profile", "daily"], ["daily_mean_pct"]),
    case("get_daily_humidity_profile", "implicit",
         "How muggy did it stay through 2024-09-09 at G20, hour over hour, and on average?",
         {"station": "G20", "date": "2024-09-09"}, ["humidity", "muggy"], ["daily_mean_pct"]),
    case("get_vapor_pressure_deficit", "explicit",
         "What was the vapor pressure deficit at station D15 on 2024-06-27?",
         {"station": "D15", "date": "2024-06-27"}, ["vapor pressure", "deficit"], ["vpd_kpa"]),
    case("get_vapor_pressure_deficit", "implicit",
         "Irrigation planning for D15, 2024-06-27: how large was the saturation deficit driving canopy water stress?",
         {"station": "D15", "date": "2024-06-27"}, ["vapor pressure", "water stress"], ["vpd_kpa"]),
    case("get_hourly_precipitation", "explicit",
         "How much precipitation fell at station K12 hour by hour on 2024-07-01, and in total?",
         {"station": "K12", "date": "2024-07-01"}, ["precipitation", "hourly"], ["daily_total_mm"]),
    case("get_hourly_precipitation", "implicit",
         "The culvert crew asks: how did the rain come down at K12 through 2024-07-01, bucket by hourly bucket, and altogether?",
         {"station": "K12", "date": "2024-07-01"}, ["precipitation", "rain"], ["daily_total_mm"]),
    case("get_daily_precipitation", "explicit",
         "What was the total precipitation at station M07 on 2024-02-11, and how many hours were wet?",
         {"station": "M07", "date": "2024-02-11"}, ["precipitation", "total", "wet hours"], ["total_mm", "wet_hours"]),
    case("get_daily_precipitation", "implicit",
         "Did 2024-02-11 soak M07? Total rainfall and the count of wet hours, please.",
         {"station": "M07", "date": "2024-02-11"}, ["precipitation", "rainfall"], ["total_mm", "wet_hours"]),
    case("get_monthly_precipitation_total", "explicit",
         "Report the total precipitation at station R33 for the month 2024-04.",
         {"station": "R33", "month": "2024-04"}, ["precipitation", "monthly", "total"], ["total_mm"]),
    case("get_monthly_precipitation_total", "implicit",
         "How generous were the April showers over R33, summed across month 2024-04?",
         {"station": "R33", "month": "2024-04"}, ["precipitation", "showers"], ["total_mm"]),
    case("get_precipitation_type", "explicit",
         "What type of precipitation was falling at station T58 at hour 21 on 2024-12-05?",
         {"station": "T58", "date": "2024-12-05", "hour": 21}, ["precipitation", "type"], ["ptype"]),
    case("get_precipitation_type", "implicit",
         "Road maintenance needs the hour-21 call for T58 on 2024-12-05 — was that drizzle, sleet, or something else coming down?",
         {"station": "T58", "date": "2024-12-05", "hour": 21}, ["precipitation", "drizzle", "sleet"], ["ptype"]),
    case("get_snow_depth", "explicit",
         "How deep was the snow lying at station W09 on 2024-01-28?",
         {"station": "W09", "date": "2024-01-28"}, ["snow", "depth"], ["depth_cm"]),
    case("get_snow_depth", "implicit",
         "Avalanche watch: what is the snowpack sitting at over W09 as of 2024-01-28?",
         {"station": "W09", "date": "2024-01-28"}, ["snow", "snowpack"], ["depth_cm"]),
    case("get_rain_gauge_status", "explicit",
         "Is the rain gauge at station A41 operational, and when was it last calibrated?",
         {"station": "A41"}, ["rain gauge", "operational", "calibration"], ["operational", "last_calibration"]),
    case("get_rain_gauge_status", "implicit",
         "Before we trust the A41 storm totals — is the tipping bucket there healthy, and when was it last checked against a standard?",
         {"station": "A41"}, ["rain gauge", "calibration"], ["operational", "last_calibration"]),
    case("get_hourly_wind_speed", "explicit",
         "What were the hourly wind speeds at station S77 on 2024-03-30, and the daily mean?",
         {"station": "S77", "date": "2024-03-30"}, ["wind speed", "hourly"], ["daily_mean_ms"]),
    case("get_hourly_wind_speed", "implicit",
         "Turbine ops want 2024-03-30 at S77 reconstructed: how hard did the breeze run, hour by hour and on average?",
         {"station": "S77", "date": "2024-03-30"}, ["wind speed", "breeze"], ["daily_mean_ms"]),
    case("get_daily_max_gust", "explicit",
         "What was the strongest wind gust at station G20 on 2024-10-17, and at what hour did it occur?",
         {"station": "G20", "date": "2024-10-17"}, ["gust", "strongest"], ["gust_ms", "gust_hour"]),
    case("get_daily_max_gust", "implicit",
         "The crane logs at G20 flag 2024-10-17 — how violent was the worst squall and when did it strike?",
         {"station": "G20", "date": "2024-10-17"}, ["gust", "squall"], ["gust_ms", "gust_hour"]),
    case("get_wind_speed_profile", "explicit",
         "What was the wind speed at the 850hPa level above station D15 on 2024-05-08?",
         {"station": "D15", "date": "2024-05-08", "level": "850hPa"}, ["wind speed", "level"], ["speed_ms"]),
    case("get_wind_speed_profile", "implicit",
         "Balloon release at D15 on 2024-05-08: how fast is the airflow aloft at 850hPa?",
         {"station": "D15", "date": "2024-05-08", "level": "850hPa"}, ["wind speed", "airflow"], ["speed_ms"]),
    case("get_turbulence_intensity", "explicit",
         "Report the turbulence intensity at station K12 at hour 9 on 2024-11-03.",
         {"station": "K12", "date": "2024-11-03", "hour": 9}, ["turbulence", "intensity"], ["intensity_pct"]),
    case("get_turbulence_intensity", "implicit",
         "Drone survey at K12, hour 9 on 2024-11-03 — how choppy was the air down low?",
         {"station": "K12", "date": "2024-11-03", "hour": 9}, ["turbulence", "choppy"], ["intensity_pct"]),
    case("get_hourly_wind_direction", "explicit",
         "Give the hourly wind direction at station M07 on 2024-04-14 and the prevailing direction for the day.",
         {"station": "M07", "date": "2024-04-14"}, ["wind direction", "hourly", "prevailing"], ["prevailing_deg"]),
    case("get_hourly_wind_direction", "implicit",
         "Smoke-plume modelling for M07 on 2024-04-14: track the veering through the day and the dominant bearing.",
         {"station": "M07", "date": "2024-04-14"}, ["wind direction", "veering"], ["prevailing_deg"]),
    case("get_prevailing_wind_direction", "explicit",
         "What was the prevailing wind direction at station R33 during month 2024-06?",
         {"station": "R33", "month": "2024-06"}, ["wind direction", "prevailing", "monthly"], ["direction_deg", "cardinal"]),
    case("get_prevailing_wind_direction", "implicit",
         "Runway usage review for R33, month 2024-06: from which bearing did the month mostly blow?",
         {"station": "R33", "month": "2024-06"}, ["wind direction", "bearing"], ["direction_deg", "cardinal"]),
    case("get_wind_rose_distribution", "explicit",
         "Give the 16-sector wind rose distribution for station T58 over month 2024-08.",
         {"station": "T58", "month": "2024-08"}, ["wind rose", "distribution"], ["sector_counts"]),
    case("get_wind_rose_distribution", "implicit",
         "For the T58 siting study, month 2024-08: how were the compass sectors loaded by the monthly flow?",
         {"station": "T58", "month": "2024-08"}, ["wind rose", "compass"], ["sector_counts"]),
    case("get_surface_pressure", "explicit",
         "What was the surface air pressure at station W09 at hour 12 on 2024-02-23?",
         {"station": "W09", "date": "2024-02-23", "hour": 12}, ["pressure", "surface"], ["pressure_hpa"]),
    case("get_surface_pressure", "implicit",
         "Before the hour-12 balloon run at W09 on 2024-02-23, what was the barometer reading at the surface?",
         {"station": "W09", "date": "2024-02-23", "hour": 12}, ["pressure", "barometer"], ["pressure_hpa"]),
    case("get_sea_level_pressure", "explicit",
         "Report the mean sea level pressure at station A41 at hour 18 on 2024-09-26.",
         {"station": "A41", "date": "2024-09-26", "hour": 18}, ["sea level", "pressure"], ["mslp_hpa"]),
    case("get_sea_level_pressure", "implicit",
         "Synoptic chart prep for hour 18 on 2024-09-26: what does A41 reduce to at sea level?",
         {"station": "A41", "date": "2024-09-26", "hour": 18}, ["sea level", "pressure"], ["mslp_hpa"]),
    case("get_pressure_tendency", "explicit",
         "What was the 3-hour pressure tendency at station S77 at hour 15 on 2024-10-30, and its characteristic?",
         {"station": "S77", "date": "2024-10-30", "hour": 15}, ["pressure", "tendency"], ["tendency_hpa_3h", "characteristic"]),
    case("get_pressure_tendency", "implicit",
         "Is the glass falling at S77? Give the hour-15 three-hour change and its character for 2024-10-30.",
         {"station": "S77", "date": "2024-10-30", "hour": 15}, ["pressure", "tendency", "falling"], ["tendency_hpa_3h"]),
    case("get_geopotential_height", "explicit",
         "What was the geopotential height of the 500hPa surface above station G20 on 2024-07-19?",
         {"station": "G20", "date": "2024-07-19", "level": "500hPa"}, ["geopotential", "height"], ["height_m"]),
    case("get_geopotential_height", "implicit",
         "For the G20 sounding on 2024-07-19: where does the 500hPa pressure surface sit aloft?",
         {"station": "G20", "date": "2024-07-19", "level": "500hPa"}, ["geopotential", "height", "aloft"], ["height_m"]),
    case("get_global_solar_radiation", "explicit",
         "Give the hourly global solar radiation at station D15 on 2024-06-21 and the daily total.",
         {"station": "D15", "date": "2024-06-21"}, ["solar radiation", "hourly"], ["daily_total_mj"]),
    case("get_global_solar_radiation", "implicit",
         "PV yield audit for D15, 2024-06-21: how much sunshine energy landed through the day, and overall?",
         {"station": "D15", "date": "2024-06-21"}, ["solar radiation", "insolation"], ["daily_total_mj"]),
    case("get_uv_index", "explicit",
         "What was the UV index at station K12 at hour 13 on 2024-07-28?",
         {"station": "K12", "date": "2024-07-28", "hour": 13}, ["uv", "index"], ["uv_index"]),
    case("get_uv_index", "implicit",
         "Lifeguards at K12 want the hour-13 sunburn risk for 2024-07-28 — how intense was it?",
         {"station": "K12", "date": "2024-07-28", "hour": 13}, ["uv", "sunburn"], ["uv_index"]),
    case("get_net_longwave_radiation", "explicit",
         "Report the net longwave radiation at station M07 on 2024-03-08.",
         {"station": "M07", "date": "2024-03-08"}, ["longwave", "radiation"], ["net_lw_wm2"]),
    case("get_net_longwave_radiation", "implicit",
         "Frost modelling for M07 on 2024-03-08: how strong was the overnight radiative cooling?",
         {"station": "M07", "date": "2024-03-08"}, ["longwave", "radiative cooling"], ["net_lw_wm2"]),
    case("get_sunshine_duration", "explicit",
         "How many hours of sunshine were recorded at station R33 on 2024-05-04?",
         {"station": "R33", "date": "2024-05-04"}, ["sunshine", "hours"], ["sunshine_hours"]),
    case("get_sunshine_duration", "implicit",
         "For the R33 tourism brief: was 2024-05-04 a bright day — how much sunshine did it actually log?",
         {"station": "R33", "date": "2024-05-04"}, ["sunshine", "duration"], ["sunshine_hours"]),
    case("get_visibility", "explicit",
         "What was the horizontal visibility at station T58 at hour 5 on 2024-11-19?",
         {"station": "T58", "date": "2024-11-19", "hour": 5}, ["visibility", "horizontal"], ["visibility_km"]),
    case("get_visibility", "implicit",
         "The hour-5 shuttle at T58 on 2024-11-19 reported haze — how far could one actually see?",
         {"station": "T58", "date": "2024-11-19", "hour": 5}, ["visibility", "haze"], ["visibility_km"]),
    case("get_cloud_cover", "explicit",
         "How many oktas of cloud cover were observed at station W09 at hour 10 on 2024-08-16?",
         {"station": "W09", "date": "2024-08-16", "hour": 10}, ["cloud", "oktas"], ["cover_oktas"]),
    case("get_cloud_cover", "implicit",
         "Was it overcast for the hour-10 solar test at W09 on 2024-08-16 — how much of the sky was shut?",
         {"station": "W09", "date": "2024-08-16", "hour": 10}, ["cloud", "overcast"], ["cover_oktas"]),
    case("get_evapotranspiration", "explicit",
         "Report the reference evapotranspiration at station A41 on 2024-07-07.",
         {"station": "A41", "date": "2024-07-07"}, ["evapotranspiration", "reference"], ["et0_mm"]),
    case("get_evapotranspiration", "implicit",
         "Irrigation scheduling at A41 for 2024-07-07: what was the crop water loss to the air?",
         {"station": "A41", "date": "2024-07-07"}, ["evapotranspiration", "water loss"], ["et0_mm"]),
    case("get_lightning_strike_count", "explicit",
         "How many lightning strikes were detected within 50 km of station S77 on 2024-06-14?",
         {"station": "S77", "date": "2024-06-14", "radius_km": 50}, ["lightning", "strikes"], ["strikes"]),
    case("get_lightning_strike_count", "implicit",
         "Range safety at S77, 2024-06-14: how active was the thunder inside a 50 km ring?",
         {"station": "S77", "date": "2024-06-14", "radius_km": 50}, ["lightning", "thunder"], ["strikes"]),
    case("get_station_metadata", "explicit",
         "Give the latitude, longitude, and elevation of station G20.",
         {"station": "G20"}, ["station", "metadata", "location"], ["latitude", "longitude", "elevation_m"]),
    case("get_station_metadata", "implicit",
         "For the observing site inventory: where exactly does G20 sit, and how high?",
         {"station": "G20"}, ["station", "location"], ["latitude", "longitude", "elevation_m"]),
]


# --------------------------------------------------------------------------
# corpus documents and the curated fact table behind the extraction cassettes
# --------------------------------------------------------------------------

CORPUS = {
    "temperature.txt": (
        "Air temperature is the most widely consulted meteorological element. At a standard "
        "observing site it is measured with calibrated thermometers housed in a ventilated "
        "instrument screen two metres above ground. The daily cycle between the overnight "
        "minimum and the afternoon maximum is the diurnal temperature range, and monthly means "
        "smooth that cycle into climate context. Sustained departure above seasonal norms marks "
        "a heat wave, while an abrupt plunge behind a polar front is a cold snap. Apparent "
        "temperature blends heat and moisture: the heat index is derived from air temperature "
        "and humidity and warns how punishing hot weather feels to the body. Below the surface, "
        "soil temperature is tracked at several depths with buried soil probes, because seed "
        "germination and root growth answer to the warmth of the ground rather than of the air."
    ),
    "humidity.txt": (
        "Atmospheric humidity describes the moisture content of the air. Relative humidity is "
        "measured with a hygrometer and swings opposite to temperature through the day. The dew "
        "point is the temperature to which air must cool for condensation to begin, and "
        "forecasters read it as a direct indicator of low-level moisture. The vapor pressure "
        "deficit, computed from temperature and relative humidity, expresses how strongly the "
        "atmosphere pulls water from leaves and soil, so irrigation schedulers watch it "
        "closely. When humidity saturates near the surface, fog forms and visibility collapses "
        "until mixing or sunshine erodes the layer."
    ),
    "precipitation.txt": (
        "Precipitation reaches the ground as rain, drizzle, snow, or sleet. Liquid totals are "
        "recorded by rain gauges; the common tipping bucket design counts discrete increments "
        "of rainfall and needs periodic calibration against a reference volume. Snowfall "
        "accumulates into the snowpack, and snow depth is read against graduated snow stakes "
        "fixed beside the gauge plot. A heavy rainfall event can deliver a month of "
        "precipitation in hours and prime catchments for flood conditions, while a long "
        "absence of rain builds toward drought. Hourly totals, daily totals, and monthly "
        "aggregates serve different users, from drainage engineers to crop insurers."
    ),
    "wind.txt": (
        "Wind speed is measured by anemometers mounted on open masts, while the wind vane "
        "reports wind direction as a bearing in degrees from true north. A gust is the brief "
        "peak of wind speed, and the daily maximum gust often matters more to structures than "
        "the mean flow. Turbulence intensity expresses the choppiness of the airflow and is "
        "derived from the variance of wind speed over short windows. Climatologies summarise "
        "the distribution of directions as a wind rose whose sectors show where the month's "
        "flow came from. Strong shear aloft accompanies thunderstorm development and matters "
        "to aviation."
    ),
    "pressure.txt": (
        "Atmospheric pressure at the surface is measured with a barometer. Because stations "
        "sit at different elevations, surface readings are reduced to sea level pressure "
        "before they are drawn onto synoptic charts. The pressure tendency, the change over "
        "three hours, signals approaching systems: a falling glass warns of deteriorating "
        "weather. Aloft, the geopotential height of a pressure surface such as 500hPa maps "
        "the large-scale flow, and radiosondes carried by balloons measure those levels "
        "directly. Deep low pressure drives strong wind speed around its centre."
    ),
    "radiation.txt": (
        "Global solar radiation, the shortwave insolation arriving at the surface, is measured "
        "with a pyranometer. Its daily integral drives photovoltaic yield and evapotranspiration "
        "alike. The uv index condenses the sunburn-relevant part of the spectrum into a simple "
        "public scale. At night the surface loses energy as net longwave radiation, and strong "
        "radiative cooling under clear skies sets up frost in hollows. Sunshine duration, the "
        "count of hours with direct beam above a threshold, remains a staple of climate "
        "records. Cloud cover modulates every one of these fluxes from hour to hour."
    ),
    "surface_phenomena.txt": (
        "Horizontal visibility is estimated by transmissometers and reported in kilometres; "
        "haze, mist, and fog are its usual thieves. Cloud cover is reported in oktas, eighths "
        "of sky, with ceilometers measuring cloud base height above the runway. Reference "
        "evapotranspiration is computed from temperature, humidity, wind speed, and solar "
        "radiation, and irrigation advisories lean on it through the growing season. Each of "
        "these quantities is observed on its own cadence and archived alongside the core "
        "surface record."
    ),
    "storms.txt": (
        "Thunderstorms concentrate hazards: lightning, downpours, damaging gusts, and abrupt "
        "pressure jumps. Lightning strikes are located by detector networks that triangulate "
        "the radio sferics each discharge emits. Counting strikes within a radius of a site is "
        "the standard exposure measure for range safety. A mature storm's gust front can double "
        "the ambient wind speed in seconds, and the accompanying downpour commonly floods urban "
        "drainage faster than any seasonal rain."
    ),
    "stations.txt": (
        "A surface weather station hosts the core sensor suite: thermometer, hygrometer, rain "
        "gauge, anemometer, wind vane, barometer, and pyranometer. Station metadata, the "
        "latitude, longitude, and elevation of the site, anchors every observation in space "
        "and lets analysts reduce pressure and compare neighbours fairly. Maintenance visits "
        "calibrate each sensor against travelling standards, and the observation archive keeps "
        "the quality-controlled record for decades of reanalysis."
    ),
    "datasets.txt": (
        "Observational series feed two kinds of products. The observation archive stores "
        "quality-controlled measurements at native resolution, while climate normals summarise "
        "three decades into reference averages. Monthly aggregates such as mean temperature, "
        "precipitation totals, and prevailing wind direction are derived from the archive and "
        "anchor anomaly calculations for monitoring bulletins. Versioned archives make those "
        "bulletins reproducible long after the instruments themselves are replaced."
    ),
    "agriculture.txt": (
        "Agricultural meteorology turns raw observations into field decisions. Reference "
        "evapotranspiration summarises the drying demand of the atmosphere, and a run of high "
        "demand with no rain tips the running water balance toward drought. Growers track the "
        "vapor pressure deficit through the canopy because stomata close when the air pulls "
        "too hard, capping photosynthesis even under generous sunshine. Soil temperature at "
        "seeding depth gates germination: drills stay parked until the seedbed holds its "
        "warmth overnight. Accumulated heat is expressed as growing degree days, accumulated "
        "into growing degree days from daily mean temperature, and phenology models spend that "
        "budget to predict flowering and harvest windows. Frost is the sharpest agricultural "
        "hazard of all: when the surface falls below freezing after a clear calm night, a "
        "single hour can erase a stone-fruit season. Irrigation scheduling therefore reads "
        "several elements at once, matching water applications to evapotranspiration while "
        "watching the forecast for the rainfall that would make the next application "
        "unnecessary. Advisory services blend station observations with model guidance, but "
        "the station record remains the ground truth that calibrates every model the advisers "
        "run. Where stations are sparse, advisers interpolate cautiously and lean on the "
        "nearest well-maintained site, because a biased gauge or a drifting thermometer "
        "propagates straight into sowing dates and spray windows. The payoff of getting this "
        "right is measured in yield: water placed a day early or a degree misjudged at seeding "
        "compounds across a season, which is why agronomists treat the meteorological record "
        "with the same care as a soil test, and why data services that answer these questions "
        "quickly are worth maintaining."
    ),
    "extremes.txt": (
        "Extreme events organise much of the demand for meteorological data. A heat wave is "
        "declared when daily maxima hold above seasonal thresholds for consecutive days; "
        "prolonged heat also drives drought by inflating evaporative demand while rainfall "
        "stays absent. A cold snap compresses the same societal stress into the opposite "
        "tail, and its overnight minima decide burst-pipe and frost losses. Flood emergencies "
        "are triggered by rainfall intensity more than by totals alone: the same hundred "
        "millimetres spread over a week passes unremarked, yet concentrated into an afternoon "
        "it overwhelms drainage and rivers. Drought is the slowest extreme, entering through "
        "soil moisture and reservoir levels over months, and exiting even more slowly. Event "
        "attribution and engineering design both reach for the archived record: return "
        "periods, annual maxima, and the shape of the tail all come from decades of "
        "observations. That is why the extremes community cares so much about homogeneous "
        "series, station metadata, and calibration history; a spurious jump in a record can "
        "masquerade as a trend. When analysts brief emergency managers, they translate the "
        "elements into consequences: how the heat index will load hospitals, how gusts will "
        "strain the grid, where visibility will close passes, and when the falling glass "
        "points at the next system arriving. The better the underlying data service, the "
        "faster those briefings move from questions to numbers."
    ),
}

ENTITIES = {
    "temperature": ("meteorological_element", "Air temperature observed at screen height, the baseline thermal state of the atmosphere."),
    "soil temperature": ("meteorological_element", "Ground temperature tracked at standard depths below the surface."),
    "heat index": ("meteorological_element", "Apparent temperature combining heat and moisture into a physiological stress measure."),
    "humidity": ("meteorological_element", "Moisture content of the air, usually reported as relative humidity."),
    "dew point": ("meteorological_element", "Temperature at which air saturates and condensation begins."),
    "vapor pressure deficit": ("meteorological_element", "Gap between saturation and actual vapor pressure; the drying power of the air."),
    "precipitation": ("meteorological_element", "Water reaching the ground as rain, drizzle, snow, or sleet."),
    "snowfall": ("meteorological_element", "Frozen precipitation accumulating during a snow event."),
    "snow depth": ("meteorological_element", "Depth of snow lying on the ground."),
    "wind speed": ("meteorological_element", "Rate of horizontal air movement at the measurement height."),
    "wind gust": ("meteorological_element", "Brief peak of wind speed above the sustained flow."),
    "turbulence": ("meteorological_element", "Irregular, choppy variation of the airflow."),
    "wind direction": ("meteorological_element", "Bearing the wind blows from, in degrees from true north."),
    "air pressure": ("meteorological_element", "Atmospheric pressure at the station surface."),
    "sea level pressure": ("meteorological_element", "Surface pressure reduced to mean sea level for synoptic comparison."),
    "pressure tendency": ("meteorological_element", "Three-hour change of surface pressure and its character."),
    "geopotential height": ("meteorological_element", "Height of a constant-pressure surface aloft."),
    "solar radiation": ("meteorological_element", "Shortwave insolation arriving at the surface."),
    "uv index": ("meteorological_element", "Scale condensing sunburn-relevant ultraviolet irradiance."),
    "longwave radiation": ("meteorological_element", "Net thermal infrared exchange between surface and sky."),
    "sunshine duration": ("meteorological_element", "Hours with direct solar beam above the reference threshold."),
    "visibility": ("meteorological_element", "Greatest horizontal distance at which objects can be recognized."),
    "cloud cover": ("meteorological_element", "Fraction of sky covered by cloud, reported in oktas."),
    "evapotranspiration": ("meteorological_element", "Water moved from soil and plants into the atmosphere."),
    "lightning": ("meteorological_element", "Electrical discharge produced by convective storms."),
    "fog": ("meteorological_element", "Cloud at ground level that suppresses visibility."),
    "frost": ("event", "Ice deposition on surfaces cooling below freezing, often under clear calm skies."),
    "thermometer": ("instrument", "Sensor for air temperature, exposed in a ventilated screen."),
    "hygrometer": ("instrument", "Sensor for atmospheric humidity."),
    "rain gauge": ("instrument", "Instrument that collects and measures liquid precipitation; tipping bucket is the common design."),
    "snow stake": ("instrument", "Graduated stake against which snow depth is read."),
    "soil probe": ("instrument", "Buried sensor reporting soil temperature at depth."),
    "anemometer": ("instrument", "Rotating or sonic sensor for wind speed."),
    "wind vane": ("instrument", "Directional sensor reporting where the wind blows from."),
    "barometer": ("instrument", "Pressure sensor at the station surface."),
    "pyranometer": ("instrument", "Dome radiometer measuring global solar radiation."),
    "ceilometer": ("instrument", "Laser instrument measuring cloud base height."),
    "transmissometer": ("instrument", "Optical instrument estimating horizontal visibility."),
    "lightning detector": ("instrument", "Network receiver locating lightning discharges by their radio emissions."),
    "radiosonde": ("instrument", "Balloon-borne sonde profiling the atmosphere aloft."),
    "weather station": ("location", "Observing site hosting the sensor suite and its metadata."),
    "heat wave": ("event", "Sustained period of abnormally high temperature."),
    "cold snap": ("event", "Abrupt arrival of abnormally low temperature."),
    "thunderstorm": ("event", "Convective storm producing lightning, gusts, and heavy rain."),
    "drought": ("event", "Prolonged moisture deficit accumulating over months."),
    "flood": ("event", "Inundation driven by rainfall intensity or sustained totals."),
    "heavy rainfall event": ("event", "Episode delivering extreme precipitation totals in a short time."),
    "observation archive": ("dataset", "Quality-controlled store of the raw observational record."),
    "climate normals": ("dataset", "Thirty-year reference averages for the core elements."),
    "wind rose": ("dataset", "Sectoral frequency distribution of wind direction."),
    "growing degree days": ("dataset", "Accumulated heat units driving crop phenology models."),
}

# (doc, subject, predicate, object, confidence, marker) — marker is a verbatim
# substring of the doc; the scripted extraction backend keys on it per chunk.
FACTS = [
    ("temperature.txt", "temperature", "measured_by", "thermometer", 0.98, "measured with calibrated thermometers"),
    ("temperature.txt", "thermometer", "part_of", "weather station", 0.85, "housed in a ventilated instrument screen"),
    ("temperature.txt", "heat wave", "characterized_by", "temperature", 0.9, "marks a heat wave"),
    ("temperature.txt", "cold snap", "characterized_by", "temperature", 0.9, "is a cold snap"),
    ("temperature.txt", "heat index", "derived_from", "temperature", 0.95, "derived from air temperature and humidity"),
    ("temperature.txt", "heat index", "derived_from", "humidity", 0.9, "derived from air temperature and humidity"),
    ("temperature.txt", "soil temperature", "measured_by", "soil probe", 0.9, "with buried soil probes"),
    ("humidity.txt", "humidity", "measured_by", "hygrometer", 0.97, "measured with a hygrometer"),
    ("humidity.txt", "dew point", "indicates", "humidity", 0.9, "direct indicator of low-level moisture"),
    ("humidity.txt", "vapor pressure deficit", "computed_from", "temperature", 0.9, "computed from temperature and relative humidity"),
    ("humidity.txt", "vapor pressure deficit", "computed_from", "humidity", 0.9, "computed from temperature and relative humidity"),
    ("humidity.txt", "vapor pressure deficit", "drives", "evapotranspiration", 0.85, "pulls water from leaves"),
    ("humidity.txt", "humidity", "drives", "fog", 0.85, "humidity saturates near the surface"),
    ("humidity.txt", "fog", "reduces", "visibility", 0.95, "fog forms and visibility collapses"),
    ("precipitation.txt", "precipitation", "recorded_by", "rain gauge", 0.97, "recorded by rain gauges"),
    ("precipitation.txt", "snow depth", "measured_by", "snow stake", 0.9, "read against graduated snow stakes"),
    ("precipitation.txt", "snowfall", "produces", "snow depth", 0.85, "accumulates into the snowpack"),
    ("precipitation.txt", "heavy rainfall event", "characterized_by", "precipitation", 0.9, "deliver a month of precipitation"),
    ("precipitation.txt", "heavy rainfall event", "drives", "flood", 0.9, "prime catchments for flood"),
    ("precipitation.txt", "drought", "characterized_by", "precipitation", 0.8, "builds toward drought"),
    ("wind.txt", "wind speed", "measured_by", "anemometer", 0.98, "measured by anemometers mounted"),
    ("wind.txt", "wind direction", "measured_by", "wind vane", 0.95, "wind vane reports wind direction"),
    ("wind.txt", "wind gust", "part_of", "wind speed", 0.85, "brief peak of wind speed"),
    ("wind.txt", "turbulence", "derived_from", "wind speed", 0.9, "derived from the variance of wind speed"),
    ("wind.txt", "wind rose", "derived_from", "wind direction", 0.9, "distribution of directions as a wind rose"),
    ("wind.txt", "wind speed", "accompanies", "thunderstorm", 0.7, "accompanies thunderstorm development"),
    ("pressure.txt", "air pressure", "measured_by", "barometer", 0.98, "measured with a barometer"),
    ("pressure.txt", "sea level pressure", "derived_from", "air pressure", 0.95, "reduced to sea level pressure"),
    ("pressure.txt", "pressure tendency", "derived_from", "air pressure", 0.9, "the change over three hours"),
    ("pressure.txt", "pressure tendency", "indicates", "thunderstorm", 0.6, "warns of deteriorating weather"),
    ("pressure.txt", "radiosonde", "measures", "geopotential height", 0.9, "radiosondes carried by balloons measure"),
    ("pressure.txt", "geopotential height", "derived_from", "air pressure", 0.85, "height of a pressure surface"),
    ("pressure.txt", "air pressure", "drives", "wind speed", 0.85, "low pressure drives strong wind"),
    ("radiation.txt", "solar radiation", "measured_by", "pyranometer", 0.98, "measured with a pyranometer"),
    ("radiation.txt", "solar radiation", "drives", "evapotranspiration", 0.9, "drives photovoltaic yield and evapotranspiration"),
    ("radiation.txt", "uv index", "derived_from", "solar radiation", 0.9, "condenses the sunburn-relevant part"),
    ("radiation.txt", "longwave radiation", "drives", "frost", 0.85, "radiative cooling under clear skies"),
    ("radiation.txt", "sunshine duration", "part_of", "solar radiation", 0.8, "count of hours with direct beam"),
    ("radiation.txt", "cloud cover", "affects", "solar radiation", 0.9, "modulates every one of these fluxes"),
    ("surface_phenomena.txt", "visibility", "measured_by", "transmissometer", 0.9, "estimated by transmissometers"),
    ("surface_phenomena.txt", "fog", "reduces", "visibility", 0.9, "fog are its usual thieves"),
    ("surface_phenomena.txt", "cloud cover", "measured_by", "ceilometer", 0.85, "with ceilometers measuring cloud base"),
    ("surface_phenomena.txt", "evapotranspiration", "computed_from", "temperature", 0.9, "computed from temperature, humidity, wind speed"),
    ("surface_phenomena.txt", "evapotranspiration", "computed_from", "humidity", 0.9, "computed from temperature, humidity, wind speed"),
    ("surface_phenomena.txt", "evapotranspiration", "computed_from", "wind speed", 0.9, "computed from temperature, humidity, wind speed"),
    ("surface_phenomena.txt", "evapotranspiration", "computed_from", "solar radiation", 0.9, "computed from temperature, humidity, wind speed"),
    ("storms.txt", "thunderstorm", "produces", "lightning", 0.95, "concentrate hazards"),
    ("storms.txt", "lightning", "measured_by", "lightning detector", 0.9, "located by detector networks"),
    ("storms.txt", "thunderstorm", "produces", "wind gust", 0.85, "gust front can double"),
    ("storms.txt", "thunderstorm", "drives", "flood", 0.8, "commonly floods urban drainage"),
    ("stations.txt", "thermometer", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "hygrometer", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "rain gauge", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "anemometer", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "wind vane", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "barometer", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "pyranometer", "belongs_to", "weather station", 0.9, "hosts the core sensor suite"),
    ("stations.txt", "weather station", "produces", "observation archive", 0.85, "keeps the quality-controlled record"),
    ("datasets.txt", "climate normals", "derived_from", "observation archive", 0.9, "summarise three decades"),
    ("datasets.txt", "observation archive", "archives", "temperature", 0.8, "mean temperature, precipitation totals"),
    ("datasets.txt", "observation archive", "archives", "precipitation", 0.8, "mean temperature, precipitation totals"),
    ("datasets.txt", "observation archive", "archives", "wind direction", 0.8, "prevailing wind direction are derived"),
    ("agriculture.txt", "evapotranspiration", "drives", "drought", 0.8, "running water balance toward drought"),
    ("agriculture.txt", "vapor pressure deficit", "affects", "evapotranspiration", 0.8, "stomata close when the air pulls"),
    ("agriculture.txt", "soil temperature", "affects", "growing degree days", 0.6, "gates germination"),
    ("agriculture.txt", "growing degree days", "derived_from", "temperature", 0.9, "accumulated into growing degree days"),
    ("agriculture.txt", "frost", "characterized_by", "temperature", 0.85, "surface falls below freezing"),
    ("extremes.txt", "heat wave", "drives", "drought", 0.85, "drives drought by inflating"),
    ("extremes.txt", "cold snap", "characterized_by", "temperature", 0.85, "overnight minima decide"),
    ("extremes.txt", "flood", "characterized_by", "precipitation", 0.9, "triggered by rainfall intensity"),
    ("extremes.txt", "heat wave", "characterized_by", "temperature", 0.85, "daily maxima hold above seasonal"),
    ("extremes.txt", "heat index", "affects", "heat wave", 0.6, "heat index will load hospitals"),
]

# standalone entity mentions (no triple in that doc)
MENTIONS = [
    ("humidity.txt", "sunshine duration", "sunshine erodes the layer"),
    ("datasets.txt", "weather station", "instruments themselves are replaced"),
]

ALIASES = [
    ("temp", "temperature"),
    ("warm", "temperature"),
    ("warmth", "temperature"),
    ("diurnal swing", "temperature"),
    ("muggy", "humidity"),
    ("mugginess", "humidity"),
    ("moisture", "humidity"),
    ("saturation", "humidity"),
    ("condensation", "dew point"),
    ("dewfall", "dew point"),
    ("saturation deficit", "vapor pressure deficit"),
    ("canopy water stress", "vapor pressure deficit"),
    ("rain", "precipitation"),
    ("rainfall", "precipitation"),
    ("drizzle", "precipitation"),
    ("downpour", "precipitation"),
    ("showers", "precipitation"),
    ("sleet", "precipitation"),
    ("snowpack", "snow depth"),
    ("snow", "snow depth"),
    ("breeze", "wind speed"),
    ("airflow", "wind speed"),
    ("squall", "wind gust"),
    ("gust", "wind gust"),
    ("gusts", "wind gust"),
    ("choppy", "turbulence"),
    ("veering", "wind direction"),
    ("bearing", "wind direction"),
    ("compass", "wind direction"),
    ("barometer reading", "air pressure"),
    ("barometric", "air pressure"),
    ("sea level", "sea level pressure"),
    ("glass", "pressure tendency"),
    ("falling glass", "pressure tendency"),
    ("pressure surface", "geopotential height"),
    ("sunshine energy", "solar radiation"),
    ("insolation", "solar radiation"),
    ("sunburn", "uv index"),
    ("sunburn risk", "uv index"),
    ("radiative cooling", "longwave radiation"),
    ("sunshine", "sunshine duration"),
    ("haze", "visibility"),
    ("overcast", "cloud cover"),
    ("cloudiness", "cloud cover"),
    ("crop water loss", "evapotranspiration"),
    ("water loss", "evapotranspiration"),
    ("thunder", "lightning"),
    ("strikes", "lightning"),
    ("seedbed", "soil temperature"),
    ("seedbed warmth", "soil temperature"),
    ("ground temperature", "soil temperature"),
    ("sweltering", "heat index"),
    ("swelter", "heat index"),
    ("tipping bucket", "rain gauge"),
    ("observing site", "weather station"),
]

PREDICATE_SYNONYMS = [
    ("measures", "^measured_by"),
    ("is_measured_by", "measured_by"),
    ("monitors", "^measured_by"),
    ("recorded_by", "measured_by"),
    ("influences", "affects"),
    ("impacts", "affects"),
    ("belongs_to", "part_of"),
    ("computed_from", "derived_from"),
]

TOOL_ENTITIES = {
    "get_hourly_temperature": "temperature",
    "get_daily_temperature_range": "temperature",
    "get_monthly_mean_temperature": "temperature",
    "get_soil_temperature": "soil temperature",
    "get_heat_index": "heat index",
    "get_relative_humidity": "humidity",
    "get_dew_point": "dew point",
    "get_daily_humidity_profile": "humidity",
    "get_vapor_pressure_deficit": "vapor pressure deficit",
    "get_hourly_precipitation": "precipitation",
    "get_daily_precipitation": "precipitation",
    "get_monthly_precipitation_total": "precipitation",
    "get_precipitation_type": "precipitation",
    "get_snow_depth": "snow depth",
    "get_rain_gauge_status": "rain gauge",
    "get_hourly_wind_speed": "wind speed",
    "get_daily_max_gust": "wind gust",
    "get_wind_speed_profile": "wind speed",
    "get_turbulence_intensity": "turbulence",
    "get_hourly_wind_direction": "wind direction",
    "get_prevailing_wind_direction": "wind direction",
    "get_wind_rose_distribution": "wind direction",
    "get_surface_pressure": "air pressure",
    "get_sea_level_pressure": "sea level pressure",
    "get_pressure_tendency": "pressure tendency",
    "get_geopotential_height": "geopotential height",
    "get_global_solar_radiation": "solar radiation",
    "get_uv_index": "uv index",
    "get_net_longwave_radiation": "longwave radiation",
    "get_sunshine_duration": "sunshine duration",
    "get_visibility": "visibility",
    "get_cloud_cover": "cloud cover",
    "get_evapotranspiration": "evapotranspiration",
    "get_lightning_strike_count": "lightning",
    "get_station_metadata": "weather station",
}


def write_static() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "corpus").mkdir(exist_ok=True)
    (DATA / "graph").mkdir(exist_ok=True)
    (DATA / "cassettes").mkdir(exist_ok=True)

    catalog = Catalog(apis=tuple(spec_from_dict(d) for d in API_DEFS))
    assert len(catalog) == 35, len(catalog)
    write_catalog(catalog, DATA / "catalog.json")

    registry = ToolRegistry.from_catalog(catalog)
    cases = [InstructionCase(**{**c, "gold_params": dict(c["gold_params"]),
                                "intent_tags": tuple(c["intent_tags"]),
                                "answer_fields": tuple(c["answer_fields"])}) for c in CASE_DEFS]
    assert len(cases) == 70, len(cases)
    by_tool: dict[str, set[str]] = {}
    for c in cases:
        api = catalog.get(c.gold_tool)
        assert api is not None, c.gold_tool
        assert not instruction_mentions_tool(c.instruction, c.gold_tool, api.name), c.id
        check = validate_request(api, c.gold_params)
        assert check.ok, (c.id, check.violations)
        field_names = {fs.name for fs in api.output_fields}
        assert set(c.answer_fields) <= field_names, (c.id, c.answer_fields)
        by_tool.setdefault(c.gold_tool, set()).add(c.style)
    assert all(styles == {"explicit", "implicit"} for styles in by_tool.values())
    save_cases(cases, DATA / "cases.jsonl")

    for doc_id, text in CORPUS.items():
        normalized = " ".join(text.split())
        (DATA / "corpus" / doc_id).write_text(normalized + "\n", encoding="utf-8")
        for rec in FACTS:
            if rec[0] == doc_id:
                assert rec[5] in normalized, (doc_id, rec[5])
        for doc, _, marker in MENTIONS:
            if doc == doc_id:
                assert marker in normalized, (doc_id, marker)

    used_entities = {s for _, s, _, _, _, _ in FACTS} | {o for _, _, _, o, _, _ in FACTS}
    used_entities |= {name for _, name, _ in MENTIONS}
    missing = used_entities - set(ENTITIES)
    assert not missing, missing

    facts_doc = {
        "entities": {name: {"type": t, "description": d} for name, (t, d) in ENTITIES.items()},
        "docs": {},
    }
    for doc_id in CORPUS:
        facts_doc["docs"][doc_id] = {
            "mentions": [
                {"name": name, "marker": marker} for doc, name, marker in MENTIONS if doc == doc_id
            ],
            "triples": [
                {"subject": s, "predicate": pr, "object": o, "confidence": cf, "marker": mk}
                for doc, s, pr, o, cf, mk in FACTS
                if doc == doc_id
            ],
        }
    (DATA / "kg_facts.json").write_text(json.dumps(facts_doc, indent=2) + "\n", encoding="utf-8")

    (DATA / "aliases.tsv").write_text(
        "\n".join(f"{v}\t{c}" for v, c in ALIASES) + "\n", encoding="utf-8"
    )
    (DATA / "predicate_synonyms.tsv").write_text(
        "\n".join(f"{v}\t{c}" for v, c in PREDICATE_SYNONYMS) + "\n", encoding="utf-8"
    )
    assert set(TOOL_ENTITIES) == {a.name for a in catalog.apis}
    assert set(TOOL_ENTITIES.values()) <= set(ENTITIES)
    (DATA / "tool_entities.json").write_text(
        json.dumps(TOOL_ENTITIES, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    # loader round-trip sanity
    load_catalog(DATA / "catalog.json")
    load_cases(DATA / "cases.jsonl", registry)
    print(f"static data written: {len(catalog)} APIs, {len(cases)} cases, {len(CORPUS)} corpus docs")


if __name__ == "__main__":
    write_static()

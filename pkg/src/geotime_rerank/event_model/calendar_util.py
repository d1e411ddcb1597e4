import calendar
import datetime

from .constant import DAYS_PER_YEAR


def day_of_year(date: datetime.date) -> int:
    """
    Ordinal day of ``date`` on a 365-day wheel.

    In leap years every day after February 29 is shifted down by one, so February 29
    and March 1 both map to 60 and December 31 maps to 365.
    """
    if not isinstance(date, datetime.date):
        raise TypeError(f"Expected a datetime.date, got {type(date).__name__}")
    ordinal = date.timetuple().tm_yday
    if calendar.isleap(date.year) and date.month > 2:
        ordinal -= 1
    return min(ordinal, DAYS_PER_YEAR)

#!/usr/bin/env python
"""Launch the session service. Host/port/storage via flags or
TWODULV_HOST / TWODULV_PORT / TWODULV_STORAGE."""

from twodulv.service import main

if __name__ == "__main__":
    main()

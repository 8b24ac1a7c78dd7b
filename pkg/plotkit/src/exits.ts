/** Exit codes, matching the simulator CLI's convention. */
export const EXIT_OK = 0;
export const EXIT_USAGE = 2;
export const EXIT_DATA = 3;
export const EXIT_IO = 4;

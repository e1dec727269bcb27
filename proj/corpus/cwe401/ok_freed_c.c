int cwe401_ok_freed_c_main(int c) {
  char *p = calloc(4, 4);
  p[0] = 1;
  free(p);
  return 0;
}

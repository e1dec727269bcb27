int cwe401_bug_overwritten_c_main(int c) {
  char *p = calloc(4, 4);
  p = calloc(4, 4);
  free(p);
  return 0;
}

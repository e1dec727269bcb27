int cwe416_bug_deref_write_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  *p = 1;
  return 0;
}

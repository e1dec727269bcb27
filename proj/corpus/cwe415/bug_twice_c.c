int cwe415_bug_twice_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  free(p);
  return 0;
}

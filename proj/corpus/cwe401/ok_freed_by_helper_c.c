void cwe401_ok_freed_by_helper_c_release(char *b) {
  free(b);
}

int cwe401_ok_freed_by_helper_c_main(int c) {
  char *p = calloc(4, 4);
  cwe401_ok_freed_by_helper_c_release(p);
  return 0;
}
